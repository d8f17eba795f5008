#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "modulus.hpp"

namespace nlh {

// Generalized Holder norm report: norm = sum_{j<=k} deriv_sup_norms[j]
// + seminorm_first, with k selected from the lower index of psi.
struct HolderReport {
    double sup_norm = 0.0;
    std::vector<double> deriv_sup_norms; // order 0..k (max over multi-indices)
    double seminorm_first = 0.0;         // [D^k f] with weight psi(h) h^{-k}
    double seminorm_second = 0.0;        // [[f]] second differences of f
    double norm = 0.0;
    Modulus psi;
    int k = 0;
};

// First or second periodic difference with a grid-aligned offset (cells per
// axis; unused axes zero for dim=1).
GridFunction difference(const GridFunction &f, const std::array<int, 2> &h,
                        int order);

// sup over grid points x and grid offsets 0 < |h| <= 1 of
// |Delta_h^order f(x)| * |h|^j / psi(|h|).
double seminorm(const GridFunction &f, const Modulus &psi, int j, int order);

HolderReport holder_norm(const GridFunction &f, const Modulus &psi,
                         int index_depth = 20);

// Periodic mollification with the grid-sampled normalized bump
// exp(-1/(1-|x|^2)); eps must be >= 2 * grid spacing.
GridFunction mollify(const GridFunction &f, double eps);

// Random band-limited trigonometric corpus member:
//   f = sum_k a_k cos(k.x + theta_k),
// |a_k| = psi(1/|k|) |k|^{-dim} * Uniform[1/2,1], deterministic per seed.
// band_fraction limits |k| to band_fraction * Nyquist (1.0 = full band).
GridFunction random_holder_sample(const Modulus &psi, uint64_t seed, int n,
                                  int dim, double period = 2.0 * PI,
                                  double band_fraction = 1.0);

} // namespace nlh
