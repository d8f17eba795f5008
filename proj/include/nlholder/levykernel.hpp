#pragma once

#include <array>
#include <functional>

#include "modulus.hpp"

namespace nlh {

using Point = std::array<double, 2>; // [0] used in d=1, both in d=2

// Coefficient a(x,h) with ellipticity bounds [lambda1, lambda2] and
// psi-continuity constant lambda3 in x.
struct KernelCoefficient {
    std::function<double(const Point &x, const Point &h)> a;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
    bool symmetric_in_h = true;
    Modulus psi_cont; // the psi of the continuity assumption
    // Optional separable form a(x,h) = x_factor(x) * h_factor(h) (signed h,
    // d=1); enables the frozen-multiplier fast path in the operator module.
    std::function<double(const Point &x)> x_factor;
    std::function<double(double h)> h_factor;

    bool separable() const {
        return static_cast<bool>(x_factor) && static_cast<bool>(h_factor);
    }

    static KernelCoefficient constant(double c);
    // a(x,h) = 1 + amp*cos(x_0); Lipschitz in x with constant |amp|.
    static KernelCoefficient cosine_x(double amp);

    double eval(const Point &x, const Point &h) const { return a(x, h); }
};

// Levy kernel a(x,h)/(|h|^d varphi(|h|)).
struct LevyKernel {
    BernsteinSpec bernstein;
    int dim = 1;
    KernelCoefficient coefficient;

    double kernel_value(const Point &x, const Point &h) const;
};

// j(r) = int_0^inf (4 pi t)^{-d/2} e^{-r^2/(4t)} mu(t) dt by adaptive
// quadrature on the log-t scale, relative tolerance 1e-8.
double jump_density(const BernsteinSpec &b, double r, int dim);

// Closed-form rotationally symmetric beta-stable constant: the jump density
// of the 2*alpha-stable process is C(2*alpha, d) * r^{-d-2*alpha}.
double stable_constant(double beta, int dim);

struct CoefficientReport {
    bool bounds_ok = true;
    bool continuity_ok = true;
    bool symmetry_ok = true;
    double worst_low = 0.0;        // min sampled a
    double worst_high = 0.0;       // max sampled a
    double worst_continuity = 0.0; // max |a(x+z,h)-a(x,h)|/psi(|z|)
    double worst_asymmetry = 0.0;  // max |a(x,h)-a(x,-h)|
};

CoefficientReport verify_coefficient(const KernelCoefficient &k, int dim,
                                     double period, int n_x, int n_h);

// int (1 ^ |h|^2) * kernel(h) dh at frozen x, by quadrature; finite for
// every certified spec (used as an integrability check).
double levy_integrability(const LevyKernel &k, const Point &x);

} // namespace nlh
