#include "greedy/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace greedy {

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MeanSE mean_se(std::span<const double> xs) {
    MeanSE out;
    out.n = xs.size();
    if (out.n == 0) return out;
    out.mean = pairwise_sum(xs) / static_cast<double>(out.n);
    if (out.n == 1) return out;
    std::vector<double> sq(out.n);
    for (std::size_t i = 0; i < out.n; ++i) {
        const double d = xs[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(out.n - 1);
    out.se = std::sqrt(var / static_cast<double>(out.n));
    return out;
}

Interval wilson95(long hits, long n) {
    if (n <= 0 || hits < 0 || hits > n) throw std::invalid_argument("wilson95: bad counts");
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    Interval iv;
    iv.lo = hits == 0 ? 0.0 : std::max(0.0, center - half);
    iv.hi = hits == n ? 1.0 : std::min(1.0, center + half);
    return iv;
}

double bennett_h(double s) {
    if (s < 0.0) throw std::invalid_argument("bennett_h: negative argument");
    if (s == 0.0) return 0.0;
    return (1.0 + s) * std::log1p(s) - s;
}

}  // namespace greedy
