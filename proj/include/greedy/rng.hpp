#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace greedy {

// splitmix64 finalizer; used both as the generator step and as the seed mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed for replicate/stream `stream` of an experiment with master seed `master`.
// Every worker derives the same seed for the same replicate, so results do not
// depend on scheduling or worker count.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream + 0x632be59bd9b4e019ull));
}

// Counter-based generator: output n is a pure function of (seed, n).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

private:
    std::uint64_t state_;
};

// Marks are quantized to this dyadic grid so that subset-mass sums and
// differences at desk scale are exact in double arithmetic (the
// per-realization inequality checks compare such sums with no epsilon).
inline constexpr int kMarkGridBits = 40;
inline constexpr double kMarkGrid = 0x1.0p-40;

// Uniform mark on the grid points of (0,1]: {2^-40, 2*2^-40, ..., 1}.
inline double sample_grid_uniform01(SplitMix64& rng) {
    const double u = rng.uniform01();
    const double k = std::floor(u * 0x1.0p40) + 1.0;
    return k * kMarkGrid;
}

// Snap a positive value up to the mark grid (exact while x < 2^13).
inline double snap_to_mark_grid(double x) {
    if (!(x > 0.0)) return kMarkGrid;
    return std::ceil(x * 0x1.0p40) * kMarkGrid;
}

long poisson_knuth(SplitMix64& rng, double mean);
long poisson_ptrs(SplitMix64& rng, double mean);

// Deterministic Poisson sampler (never std::poisson_distribution, whose
// stream is implementation-defined).
inline long sample_poisson(SplitMix64& rng, double mean) {
    if (mean < 0.0) throw std::invalid_argument("sample_poisson: negative mean");
    if (mean == 0.0) return 0;
    return mean < 30.0 ? poisson_knuth(rng, mean) : poisson_ptrs(rng, mean);
}

}  // namespace greedy
