#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greedy/geometry.hpp"
#include "greedy/rng.hpp"

namespace greedy {

struct configuration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MarkFamily { dirac, uniform, exponential, pareto, powerlaw };

// Mark intensity measure nu, as a named family scaled by a total intensity.
// `powerlaw` (density proportional to t^-a on (0,m]) has infinite total mass
// and can only be sampled with a truncation floor eps_min.
struct MarkLaw {
    MarkFamily family = MarkFamily::uniform;
    double param_a = 1.0;  // dirac/uniform: m; exponential: rate; pareto: shape; powerlaw: exponent a
    double param_b = 0.0;  // pareto: scale; exponential: optional truncation m (0 = untruncated)
    double intensity_total = 1.0;       // mass of nu; ignored when infinite_total
    bool infinite_total = false;
    bool has_exp_moment = true;
    std::optional<double> support_bound;  // set iff the support is bounded
    double eps_min = 0.0;                 // truncation floor for infinite-total laws

    static MarkLaw dirac(double m, double intensity);
    static MarkLaw uniform(double m, double intensity);
    static MarkLaw exponential(double rate, double intensity, double truncation = 0.0);
    static MarkLaw pareto(double shape, double scale, double intensity);
    static MarkLaw powerlaw(double exponent, double m, double eps_min = 0.0);

    // Effective total intensity used for sampling (after the eps_min floor).
    double effective_intensity() const;

    // Expected mass per unit volume discarded by the eps_min floor.
    double discarded_mass_rate() const;

    double sample_mark(SplitMix64& rng) const;

    // nu((0,m]) for a cutoff at or above the support bound; used by the
    // penalized rate floor, which assumes a finite law.
    double mass_below(double m) const;

    std::string to_string() const;
    static MarkLaw parse(const std::string& text);
};

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    int dim() const { return static_cast<int>(lo.size()); }
    double volume() const;
    bool contains(const Point& p) const;
};

// Axis box that contains every budget-ell path or animal anchored at 0
// (and optionally at beta*ell*e1): [-ell,(1+beta)ell] x [-ell,ell]^{d-1}.
Box experiment_window(double ell, double beta, int dim);

struct Atom {
    Point position;
    double mark = 0.0;
};

struct PointConfiguration {
    int dimension = 2;
    Box window;
    std::vector<Atom> atoms;
    std::uint64_t seed = 0;
    MarkLaw law;
};

PointConfiguration sample_ppp(const Box& window, const MarkLaw& law, std::uint64_t seed);

double mass_of(const PointConfiguration& config, const Region& region);
double mass_of(const PointConfiguration& config, const Box& box);
double total_mass(const PointConfiguration& config);

// Splits marks at level m: first output carries t ^ m, second (t - m)^+ with
// zero-mark atoms dropped. Positions are preserved; per atom the two marks
// sum back to the original exactly.
std::pair<PointConfiguration, PointConfiguration> split_truncate(const PointConfiguration& config,
                                                                 double m);

// Same positions, all marks set to 1.
PointConfiguration dirac_projection(const PointConfiguration& config);

// Independent uniform assignment of each atom to one of n layers. The layers
// are disjoint and their union is exactly the input.
std::vector<PointConfiguration> discretize_layers(const PointConfiguration& config, int n,
                                                  std::uint64_t seed);

// Text serialization: one-line header then one "x_1 ... x_d mark" record per
// atom, 17 significant digits. Bit-exact round trip.
void serialize(const PointConfiguration& config, std::ostream& os);
std::string serialize(const PointConfiguration& config);
PointConfiguration parse_configuration(std::istream& is);
PointConfiguration parse_configuration(const std::string& text);

}  // namespace greedy
