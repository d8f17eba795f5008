#pragma once

#include <cstdint>
#include <vector>

#include "heatkernel.hpp"

namespace nlh {

// Subordinator values S_t and subordinate-Brownian increments X_t = W_{S_t},
// deterministic per seed.
struct PathSample {
    double t = 0.0;
    std::vector<double> subordinator_values;
    std::vector<Point> increments;
    int dim = 1;
    uint64_t seed = 0;
};

// n i.i.d. positive alpha-stable samples with E[exp(-lambda S)] =
// exp(-t lambda^alpha), Kanter construction from (U, E) pairs.
std::vector<double> sample_stable_subordinator(double alpha, double t, int n,
                                               uint64_t seed);

// X = sqrt(2 S_t) Z per sample, matching the (4 pi t)^{-d/2} e^{-|x|^2/(4t)}
// Brownian normalization.
PathSample sample_sbm(double alpha, double t, int n, int dim, uint64_t seed);

struct KsReport {
    double ks = 0.0;
    double clipped_fraction = 0.0;
    size_t n_samples = 0;
};

// Kolmogorov-Smirnov distance between the empirical CDF of the samples
// (box-centered, values in [-L/2, L/2)) and the integrated grid CDF of a
// periodized density. Errors if more than 1% of the mass is clipped.
KsReport ks_compare(const std::vector<double> &samples,
                    const HeatKernelGrid &density);

// Inverse-CDF draws from the grid density itself (self-test path).
std::vector<double> sample_from_grid(const HeatKernelGrid &density, int n,
                                     uint64_t seed);

} // namespace nlh
