#include "nlholder/levykernel.hpp"

#include <cmath>

#include "nlholder/quad.hpp"

namespace nlh {

KernelCoefficient KernelCoefficient::constant(double c) {
    if (!(c > 0.0))
        throw config_error("coefficient: constant must be positive");
    KernelCoefficient k;
    k.a = [c](const Point &, const Point &) { return c; };
    k.lambda1 = k.lambda2 = c;
    k.lambda3 = 1.0;
    k.symmetric_in_h = true;
    k.psi_cont = Modulus::power(1.0);
    k.x_factor = [c](const Point &) { return c; };
    k.h_factor = [](double) { return 1.0; };
    return k;
}

KernelCoefficient KernelCoefficient::cosine_x(double amp) {
    if (!(std::abs(amp) < 1.0))
        throw config_error("coefficient: |amp| must be < 1 for ellipticity");
    KernelCoefficient k;
    k.a = [amp](const Point &x, const Point &) {
        return 1.0 + amp * std::cos(x[0]);
    };
    k.lambda1 = 1.0 - std::abs(amp);
    k.lambda2 = 1.0 + std::abs(amp);
    k.lambda3 = std::abs(amp); // |cos x - cos y| <= |x-y|
    k.symmetric_in_h = true;
    k.psi_cont = Modulus::power(1.0);
    k.x_factor = [amp](const Point &x) { return 1.0 + amp * std::cos(x[0]); };
    k.h_factor = [](double) { return 1.0; };
    return k;
}

double LevyKernel::kernel_value(const Point &x, const Point &h) const {
    double r = std::sqrt(h[0] * h[0] + h[1] * h[1]);
    if (!(r > 0.0))
        throw guard_error("kernel_value: h must be nonzero");
    return coefficient.eval(x, h) /
           (std::pow(r, dim) * bernstein.varphi.eval(r));
}

double jump_density(const BernsteinSpec &b, double r, int dim) {
    if (!b.has_levy_density())
        throw config_error("jump_density: family without a Levy density (" +
                           b.family + ")");
    if (!(r > 0.0))
        throw config_error("jump_density: r must be positive");
    auto integrand = [&](double u) {
        double t = std::exp(u);
        return std::pow(4.0 * PI * t, -0.5 * dim) *
               std::exp(-r * r / (4.0 * t)) * b.levy_density(t) * t;
    };
    // Peak sits near t ~ r^2; march decades outward until both tails are
    // negligible relative to the accumulated value.
    double center = std::log(r * r);
    double total = adaptive_simpson(integrand, center - 1.0, center + 1.0, 1e-9);
    double lo = center - 1.0, hi = center + 1.0;
    const double dec = std::log(10.0);
    for (int i = 0; i < 60; ++i) {
        double c = adaptive_simpson(integrand, lo - dec, lo, 1e-9);
        lo -= dec;
        total += c;
        if (std::abs(c) < 1e-12 * std::abs(total) && i > 2)
            break;
    }
    for (int i = 0; i < 60; ++i) {
        double c = adaptive_simpson(integrand, hi, hi + dec, 1e-9);
        hi += dec;
        total += c;
        if (std::abs(c) < 1e-12 * std::abs(total) && i > 2)
            break;
    }
    return total;
}

double stable_constant(double beta, int dim) {
    if (!(beta > 0.0 && beta < 2.0))
        throw config_error("stable_constant: beta must lie in (0,2)");
    double alpha = 0.5 * beta;
    return alpha * std::pow(4.0, alpha) * std::tgamma(0.5 * dim + alpha) /
           (std::tgamma(1.0 - alpha) * std::pow(PI, 0.5 * dim));
}

CoefficientReport verify_coefficient(const KernelCoefficient &k, int dim,
                                     double period, int n_x, int n_h) {
    CoefficientReport rep;
    rep.worst_low = 1e300;
    rep.worst_high = -1e300;
    auto xs = [&](int i) { return period * i / n_x; };
    std::vector<Point> hs;
    for (int i = 0; i < n_h; ++i) {
        double r = std::exp(std::log(1e-4) +
                            (std::log(4.0) - std::log(1e-4)) * i /
                                std::max(1, n_h - 1));
        if (dim == 1) {
            hs.push_back({r, 0.0});
        } else {
            double th = 2.0 * PI * (i % 16) / 16.0;
            hs.push_back({r * std::cos(th), r * std::sin(th)});
        }
    }
    std::vector<double> zs = {1.0 / 64, 1.0 / 16, 1.0 / 4, 1.0};
    for (int ix = 0; ix < n_x; ++ix) {
        Point x{xs(ix), dim == 2 ? xs((ix * 7) % n_x) : 0.0};
        for (const auto &h : hs) {
            double v = k.eval(x, h);
            rep.worst_low = std::min(rep.worst_low, v);
            rep.worst_high = std::max(rep.worst_high, v);
            Point mh{-h[0], -h[1]};
            rep.worst_asymmetry =
                std::max(rep.worst_asymmetry, std::abs(v - k.eval(x, mh)));
            for (double z : zs) {
                Point xz{x[0] + z, x[1]};
                double c =
                    std::abs(k.eval(xz, h) - v) / k.psi_cont.eval(z);
                rep.worst_continuity = std::max(rep.worst_continuity, c);
            }
        }
    }
    double tol = 1e-12;
    rep.bounds_ok = rep.worst_low >= k.lambda1 - tol &&
                    rep.worst_high <= k.lambda2 + tol;
    rep.continuity_ok = rep.worst_continuity <= k.lambda3 + tol;
    rep.symmetry_ok = !k.symmetric_in_h || rep.worst_asymmetry <= tol;
    return rep;
}

double levy_integrability(const LevyKernel &k, const Point &x) {
    int d = k.dim;
    auto radial = [&](double u) {
        double r = std::exp(u);
        double angular = 0.0;
        if (d == 1) {
            angular = k.kernel_value(x, {r, 0.0}) +
                      k.kernel_value(x, {-r, 0.0});
        } else {
            int na = 16;
            for (int i = 0; i < na; ++i) {
                double th = 2.0 * PI * (i + 0.5) / na;
                angular += k.kernel_value(
                    x, {r * std::cos(th), r * std::sin(th)});
            }
            angular *= 2.0 * PI * r / na;
        }
        double cap = std::min(1.0, r * r);
        return cap * angular * r; // du measure: dr = r du
    };
    double total = 0.0;
    // inner decades down to 1e-8, outer until the tail bound takes over
    for (double lo = std::log(1e-8); lo < std::log(1e6);
         lo += std::log(10.0))
        total += adaptive_simpson(radial, lo, lo + std::log(10.0), 1e-8);
    return total;
}

} // namespace nlh
