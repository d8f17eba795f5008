#pragma once

#include <vector>

#include "grid.hpp"
#include "levykernel.hpp"
#include "modulus.hpp"

namespace nlh {

// Periodized transition density q(t, .) on the box, from dual-lattice
// sampling of the characteristic function.
struct HeatKernelGrid {
    double t = 0.0;
    GridFunction grid;
    double spectral_cutoff = 0.0; // largest |xi| used
};

// Negative Fourier multiplier of the translation-invariant operator:
// F(L0 u)(xi) = -values[xi] * F(u)(xi). Stored on the full mode lattice.
struct SymbolTable {
    int dim = 1;
    int n = 0;
    double period = 0.0;
    std::vector<double> values;

    void save_csv(const std::string &path) const;
};

// Exact subordinate symbol phi(|xi|^2).
SymbolTable subordinate_symbol(const BernsteinSpec &b, int dim, int n,
                               double period);

// Numerical symbol of the kernel frozen at x0 (d=1, symmetric coefficient):
// symbol(xi) = int (1-cos(xi h)) a0(h) / (|h| varphi(|h|)) dh, rel tol 1e-8.
SymbolTable compute_symbol(const LevyKernel &k, const Point &x0, int n,
                           double period);

// Inverse DFT of e^{-t phi(|xi|^2)}. Errors if the spectral tail at the
// Nyquist frequency exceeds 1e-14 (suggests a sufficient n).
HeatKernelGrid density(const BernsteinSpec &b, double t, int dim, int n,
                       double period);

struct BoundReport {
    double C_hat = 0.0;
};

// Two-sided bound ratio: max over (t,x) of max(rho, 1/rho) with
// rho = q(t,x) / min(phi^-1(1/t)^{d/2}, t phi(|x|^-2)/|x|^d). d=1.
BoundReport check_twosided(const BernsteinSpec &b,
                           const std::vector<double> &t_list,
                           const std::vector<double> &x_list, int n,
                           double period);

// Derivative bound ratio (d=1, k <= 3):
// |d^k q(t,x)| <= C phi^-1(1/t)^{k/2} * (two-sided envelope).
BoundReport check_derivative_bound(const BernsteinSpec &b, int k,
                                   const std::vector<double> &t_list,
                                   const std::vector<double> &x_list, int n,
                                   double period);

// Frequency-domain semigroup: F(P_t f) = e^{-t symbol} F(f).
GridFunction semigroup_apply(const SymbolTable &s, double t,
                             const GridFunction &f);

// C_hat = max over t of ||D^k P_t f||_0 * varphi^-1(t)^k / ||f||_0.
BoundReport check_semigroup_derivative_bound(const BernsteinSpec &b,
                                             const GridFunction &f, int k,
                                             const std::vector<double> &t_list);

// Spectral solve of L0 u = f for mean-zero f: F(u) = -F(f)/symbol.
GridFunction solve_constant(const SymbolTable &s, const GridFunction &f);

// Potential operator R f = int_0^inf P_t f dt by time quadrature to T plus
// the analytic frequency-domain tail (cross-check path; equals
// -solve_constant for mean-zero f up to quadrature error).
GridFunction potential_time_quadrature(const SymbolTable &s,
                                       const GridFunction &f, int steps = 256);

} // namespace nlh
