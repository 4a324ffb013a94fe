#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace greedy {

// Pairwise (cascade) summation. Used for all Monte Carlo aggregation so that
// results do not depend on how replicates were distributed over workers.
double pairwise_sum(std::span<const double> xs);

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    std::size_t n = 0;
};

MeanSE mean_se(std::span<const double> xs);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson 95% score interval for a binomial proportion.
Interval wilson95(long hits, long n);

// h(s) = (1+s)log(1+s) - s, the Bennett/Poisson rate kernel.
double bennett_h(double s);

}  // namespace greedy
