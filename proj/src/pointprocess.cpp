#include "greedy/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace greedy {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double grid_floor(double m) { return std::floor(m * 0x1.0p40) * kMarkGrid; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw configuration_error("bad number: " + s);
    return v;
}

}  // namespace

MarkLaw MarkLaw::dirac(double m, double intensity) {
    if (!(m > 0.0) || !(intensity >= 0.0)) throw configuration_error("dirac law: bad parameters");
    MarkLaw law;
    law.family = MarkFamily::dirac;
    law.param_a = m;
    law.intensity_total = intensity;
    law.support_bound = m;
    return law;
}

MarkLaw MarkLaw::uniform(double m, double intensity) {
    if (!(m >= kMarkGrid) || !(intensity >= 0.0)) throw configuration_error("uniform law: bad parameters");
    MarkLaw law;
    law.family = MarkFamily::uniform;
    law.param_a = m;
    law.intensity_total = intensity;
    law.support_bound = m;
    return law;
}

MarkLaw MarkLaw::exponential(double rate, double intensity, double truncation) {
    if (!(rate > 0.0) || !(intensity >= 0.0) || truncation < 0.0)
        throw configuration_error("exponential law: bad parameters");
    MarkLaw law;
    law.family = MarkFamily::exponential;
    law.param_a = rate;
    law.param_b = truncation;
    law.intensity_total = intensity;
    if (truncation > 0.0) law.support_bound = truncation;
    return law;
}

MarkLaw MarkLaw::pareto(double shape, double scale, double intensity) {
    if (!(shape > 0.0) || !(scale > 0.0) || !(intensity >= 0.0))
        throw configuration_error("pareto law: bad parameters");
    MarkLaw law;
    law.family = MarkFamily::pareto;
    law.param_a = shape;
    law.param_b = scale;
    law.intensity_total = intensity;
    law.has_exp_moment = false;
    return law;
}

MarkLaw MarkLaw::powerlaw(double exponent, double m, double eps_min) {
    if (!(exponent > 1.0) || exponent >= 2.0 || !(m > 0.0))
        throw configuration_error("powerlaw law: exponent must be in (1,2) and m > 0");
    MarkLaw law;
    law.family = MarkFamily::powerlaw;
    law.param_a = exponent;
    law.param_b = m;
    law.infinite_total = true;
    law.support_bound = m;
    law.eps_min = eps_min;
    return law;
}

double MarkLaw::effective_intensity() const {
    if (!infinite_total) return intensity_total;
    if (!(eps_min > 0.0))
        throw configuration_error("infinite-total law requires a truncation floor eps_min");
    const double a = param_a, m = param_b;
    // nu([eps,m]) for density t^-a
    return (std::pow(eps_min, 1.0 - a) - std::pow(m, 1.0 - a)) / (a - 1.0);
}

double MarkLaw::discarded_mass_rate() const {
    if (!infinite_total || !(eps_min > 0.0)) return 0.0;
    const double a = param_a;
    return std::pow(eps_min, 2.0 - a) / (2.0 - a);
}

double MarkLaw::sample_mark(SplitMix64& rng) const {
    switch (family) {
        case MarkFamily::dirac:
            return param_a;
        case MarkFamily::uniform: {
            const double u = rng.uniform01();
            return std::min(snap_to_mark_grid(u * param_a), grid_floor(param_a));
        }
        case MarkFamily::exponential: {
            const double u = rng.uniform01();
            double x;
            if (param_b > 0.0) {
                // inverse CDF of the law conditioned to (0,m]
                x = -std::log1p(-u * (1.0 - std::exp(-param_a * param_b))) / param_a;
                return std::min(snap_to_mark_grid(x), grid_floor(param_b));
            }
            x = -std::log1p(-u) / param_a;
            return snap_to_mark_grid(x);
        }
        case MarkFamily::pareto: {
            const double u = rng.uniform01();
            const double x = param_b * std::pow(1.0 - u, -1.0 / param_a);
            return snap_to_mark_grid(x);
        }
        case MarkFamily::powerlaw: {
            if (!(eps_min > 0.0))
                throw configuration_error("powerlaw sampling requires eps_min > 0");
            const double a = param_a, m = param_b;
            const double u = rng.uniform01();
            const double lo = std::pow(eps_min, 1.0 - a);
            const double hi = std::pow(m, 1.0 - a);
            const double x = std::pow(lo + u * (hi - lo), 1.0 / (1.0 - a));
            return std::min(snap_to_mark_grid(x), grid_floor(m));
        }
    }
    throw configuration_error("unknown mark family");
}

double MarkLaw::mass_below(double m) const {
    if (!(m > 0.0)) return 0.0;
    switch (family) {
        case MarkFamily::dirac:
            return m >= param_a ? intensity_total : 0.0;
        case MarkFamily::uniform:
            return intensity_total * std::min(1.0, m / param_a);
        case MarkFamily::exponential: {
            const double cdf = 1.0 - std::exp(-param_a * m);
            if (param_b > 0.0) {
                const double norm = 1.0 - std::exp(-param_a * param_b);
                return intensity_total * std::min(1.0, cdf / norm);
            }
            return intensity_total * cdf;
        }
        case MarkFamily::pareto:
            if (m < param_b) return 0.0;
            return intensity_total * (1.0 - std::pow(param_b / m, param_a));
        case MarkFamily::powerlaw: {
            const double a = param_a;
            const double top = std::min(m, param_b);
            if (!(eps_min > 0.0) || top <= eps_min) return 0.0;
            return (std::pow(eps_min, 1.0 - a) - std::pow(top, 1.0 - a)) / (a - 1.0);
        }
    }
    return 0.0;
}

std::string MarkLaw::to_string() const {
    switch (family) {
        case MarkFamily::dirac:
            return "dirac:" + fmt17(param_a) + ":" + fmt17(intensity_total);
        case MarkFamily::uniform:
            return "uniform:" + fmt17(param_a) + ":" + fmt17(intensity_total);
        case MarkFamily::exponential:
            return "exp:" + fmt17(param_a) + ":" + fmt17(param_b) + ":" + fmt17(intensity_total);
        case MarkFamily::pareto:
            return "pareto:" + fmt17(param_a) + ":" + fmt17(param_b) + ":" + fmt17(intensity_total);
        case MarkFamily::powerlaw:
            return "powerlaw:" + fmt17(param_a) + ":" + fmt17(param_b) + ":" + fmt17(eps_min);
    }
    throw configuration_error("unknown mark family");
}

MarkLaw MarkLaw::parse(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.empty()) throw configuration_error("empty law string");
    const std::string& name = parts[0];
    auto need = [&](std::size_t n) {
        if (parts.size() != n + 1)
            throw configuration_error("law '" + name + "' expects " + std::to_string(n) +
                                      " parameters: " + text);
    };
    if (name == "dirac") {
        need(2);
        return dirac(parse_double(parts[1]), parse_double(parts[2]));
    }
    if (name == "uniform") {
        need(2);
        return uniform(parse_double(parts[1]), parse_double(parts[2]));
    }
    if (name == "exp") {
        need(3);
        return exponential(parse_double(parts[1]), parse_double(parts[3]), parse_double(parts[2]));
    }
    if (name == "pareto") {
        need(3);
        return pareto(parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3]));
    }
    if (name == "powerlaw") {
        need(3);
        return powerlaw(parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3]));
    }
    throw configuration_error("unknown law family: " + name);
}

double Box::volume() const {
    if (lo.size() != hi.size()) throw configuration_error("box: corner dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const double w = hi[i] - lo[i];
        if (w < 0.0) throw configuration_error("box: hi < lo");
        v *= w;
    }
    return v;
}

bool Box::contains(const Point& p) const {
    if (p.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
}

Box experiment_window(double ell, double beta, int dim) {
    if (!(ell > 0.0) || beta < 0.0 || beta >= 1.0 || dim < 2)
        throw configuration_error("experiment_window: bad parameters");
    Box box;
    box.lo.assign(static_cast<std::size_t>(dim), -ell);
    box.hi.assign(static_cast<std::size_t>(dim), ell);
    box.hi[0] = (1.0 + beta) * ell;
    return box;
}

PointConfiguration sample_ppp(const Box& window, const MarkLaw& law, std::uint64_t seed) {
    PointConfiguration config;
    config.dimension = window.dim();
    config.window = window;
    config.seed = seed;
    config.law = law;

    const double mean = window.volume() * law.effective_intensity();
    SplitMix64 rng(seed);
    const long count = sample_poisson(rng, mean);
    config.atoms.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        Atom atom;
        atom.position.resize(static_cast<std::size_t>(config.dimension));
        for (int k = 0; k < config.dimension; ++k) {
            atom.position[static_cast<std::size_t>(k)] =
                rng.uniform(window.lo[static_cast<std::size_t>(k)], window.hi[static_cast<std::size_t>(k)]);
        }
        atom.mark = law.sample_mark(rng);
        config.atoms.push_back(std::move(atom));
    }
    return config;
}

double mass_of(const PointConfiguration& config, const Region& region) {
    double s = 0.0;
    for (const Atom& a : config.atoms)
        if (region.contains(a.position)) s += a.mark;
    return s;
}

double mass_of(const PointConfiguration& config, const Box& box) {
    double s = 0.0;
    for (const Atom& a : config.atoms)
        if (box.contains(a.position)) s += a.mark;
    return s;
}

double total_mass(const PointConfiguration& config) {
    double s = 0.0;
    for (const Atom& a : config.atoms) s += a.mark;
    return s;
}

std::pair<PointConfiguration, PointConfiguration> split_truncate(const PointConfiguration& config,
                                                                 double m) {
    if (!(m > 0.0)) throw std::invalid_argument("split_truncate: m must be positive");
    PointConfiguration low = config, high = config;
    high.atoms.clear();
    for (std::size_t i = 0; i < config.atoms.size(); ++i) {
        const double t = config.atoms[i].mark;
        low.atoms[i].mark = std::min(t, m);
        const double excess = t - m;
        if (excess > 0.0) {
            Atom a = config.atoms[i];
            a.mark = excess;
            high.atoms.push_back(std::move(a));
        }
    }
    return {std::move(low), std::move(high)};
}

PointConfiguration dirac_projection(const PointConfiguration& config) {
    PointConfiguration out = config;
    for (Atom& a : out.atoms) a.mark = 1.0;
    out.law = MarkLaw::dirac(1.0, config.law.infinite_total ? config.law.effective_intensity()
                                                            : config.law.intensity_total);
    return out;
}

std::vector<PointConfiguration> discretize_layers(const PointConfiguration& config, int n,
                                                  std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("discretize_layers: n must be >= 1");
    std::vector<PointConfiguration> layers(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        layers[static_cast<std::size_t>(i)].dimension = config.dimension;
        layers[static_cast<std::size_t>(i)].window = config.window;
        layers[static_cast<std::size_t>(i)].law = config.law;
        layers[static_cast<std::size_t>(i)].seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    }
    SplitMix64 rng(seed);
    for (const Atom& a : config.atoms) {
        const int layer = std::min(n - 1, static_cast<int>(rng.uniform01() * n));
        layers[static_cast<std::size_t>(layer)].atoms.push_back(a);
    }
    return layers;
}

void serialize(const PointConfiguration& config, std::ostream& os) {
    os << "d=" << config.dimension << " seed=" << config.seed << " law=" << config.law.to_string()
       << " window=";
    for (std::size_t i = 0; i < config.window.lo.size(); ++i) {
        if (i) os << ',';
        os << fmt17(config.window.lo[i]);
    }
    os << ';';
    for (std::size_t i = 0; i < config.window.hi.size(); ++i) {
        if (i) os << ',';
        os << fmt17(config.window.hi[i]);
    }
    os << '\n';
    for (const Atom& a : config.atoms) {
        for (double x : a.position) os << fmt17(x) << ' ';
        os << fmt17(a.mark) << '\n';
    }
}

std::string serialize(const PointConfiguration& config) {
    std::ostringstream os;
    serialize(config, os);
    return os.str();
}

PointConfiguration parse_configuration(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw configuration_error("configuration: missing header");
    PointConfiguration config;
    for (const std::string& token : split(header, ' ')) {
        if (token.empty()) continue;
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw configuration_error("configuration: bad header token " + token);
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "d") {
            config.dimension = static_cast<int>(parse_double(value));
        } else if (key == "seed") {
            config.seed = std::stoull(value);
        } else if (key == "law") {
            config.law = MarkLaw::parse(value);
        } else if (key == "window") {
            const auto corners = split(value, ';');
            if (corners.size() != 2) throw configuration_error("configuration: bad window");
            for (const std::string& c : split(corners[0], ',')) config.window.lo.push_back(parse_double(c));
            for (const std::string& c : split(corners[1], ',')) config.window.hi.push_back(parse_double(c));
        } else {
            throw configuration_error("configuration: unknown header key " + key);
        }
    }
    if (config.window.dim() != config.dimension)
        throw configuration_error("configuration: window dimension mismatch");
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Atom atom;
        double v;
        std::vector<double> vals;
        while (ls >> v) vals.push_back(v);
        if (vals.size() != static_cast<std::size_t>(config.dimension) + 1)
            throw configuration_error("configuration: bad atom record: " + line);
        atom.position.assign(vals.begin(), vals.end() - 1);
        atom.mark = vals.back();
        config.atoms.push_back(std::move(atom));
    }
    return config;
}

PointConfiguration parse_configuration(const std::string& text) {
    std::istringstream is(text);
    return parse_configuration(is);
}

}  // namespace greedy
