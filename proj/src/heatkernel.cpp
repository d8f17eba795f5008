#include "nlholder/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nlholder/quad.hpp"

namespace nlh {

void SymbolTable::save_csv(const std::string &path) const {
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (!f)
        throw config_error("symbol save_csv: cannot open " + path);
    std::fprintf(f, "mode,xi,value\n");
    GridFunction probe(dim, n, period);
    for (size_t i = 0; i < values.size(); ++i) {
        double xi = dim == 1 ? probe.xi(static_cast<int>(i)) : 0.0;
        std::fprintf(f, "%zu,%.17g,%.17g\n", i, xi, values[i]);
    }
    std::fclose(f);
}

SymbolTable subordinate_symbol(const BernsteinSpec &b, int dim, int n,
                               double period) {
    SymbolTable s;
    s.dim = dim;
    s.n = n;
    s.period = period;
    GridFunction probe(dim, n, period);
    s.values.resize(probe.size());
    if (dim == 1) {
        for (int k = 0; k < n; ++k) {
            double xi = probe.xi(k);
            s.values[k] = xi == 0.0 ? 0.0 : b.phi(xi * xi);
        }
    } else {
        for (int ky = 0; ky < n; ++ky) {
            for (int kx = 0; kx < n; ++kx) {
                double xx = probe.xi(kx), yy = probe.xi(ky);
                double q = xx * xx + yy * yy;
                s.values[static_cast<size_t>(ky) * n + kx] =
                    q == 0.0 ? 0.0 : b.phi(q);
            }
        }
    }
    return s;
}

namespace {

// symbol(xi) = 2 int_0^inf (1 - cos(xi h)) g(h) dh for the radial kernel
// g(h) = a0(h) / (h varphi(h)), d=1. Inner region by Taylor expansion of
// 1-cos, mid region resolved directly, far tail by integration by parts.
double symbol_1d(const std::function<double(double)> &g, double xi) {
    xi = std::abs(xi);
    if (xi == 0.0)
        return 0.0;
    const double P = 2.0 * PI / xi;
    const double h0 = std::min(0.1, 0.5 / xi);

    // inner: (1-cos z) ~ z^2/2 - z^4/24 + z^6/720 - z^8/40320 + z^10/3628800
    auto inner_f = [&](double u) {
        double h = std::exp(u);
        double z = xi * h, z2 = z * z;
        double poly = z2 * (0.5 +
                            z2 * (-1.0 / 24.0 +
                                  z2 * (1.0 / 720.0 +
                                        z2 * (-1.0 / 40320.0 +
                                              z2 * (1.0 / 3628800.0)))));
        return poly * g(h) * h;
    };
    const double dec = std::log(10.0);
    double inner = 0.0;
    {
        double hi = std::log(h0);
        for (int i = 0; i < 100; ++i) {
            double c = adaptive_simpson(inner_f, hi - dec, hi, 1e-10);
            hi -= dec;
            inner += c;
            if (i > 2 && std::abs(c) < 1e-13 * std::abs(inner))
                break;
        }
    }

    // mid: [h0, H] with H covering enough periods for the far expansion
    double H = std::max(40.0 * P, 8.0 * h0);
    auto mid_f = [&](double u) {
        double h = std::exp(u);
        return (1.0 - std::cos(xi * h)) * g(h) * h;
    };
    double mid = 0.0;
    for (double lo = std::log(h0); lo < std::log(H) - 1e-12;) {
        double hi = std::min(lo + dec, std::log(H));
        mid += adaptive_simpson(mid_f, lo, hi, 1e-10);
        lo = hi;
    }

    // far: int_H^inf g dh  -  int_H^inf cos(xi h) g dh
    auto g_log = [&](double u) {
        double h = std::exp(u);
        return g(h) * h;
    };
    double flat = 0.0;
    double Hend = H;
    for (int i = 0; i < 100; ++i) {
        double c = adaptive_simpson(g_log, std::log(Hend),
                                    std::log(Hend) + dec, 1e-10);
        flat += c;
        Hend *= 10.0;
        if (i > 2 && std::abs(c) < 1e-13 * std::abs(flat))
            break;
    }
    // residual beyond Hend from the local power slope
    {
        // g ~ h^{-1-q}: int_H^inf g = g(H) H / q
        double slope =
            -std::log(g(Hend) / g(Hend / 1.01)) / std::log(1.01);
        double q = slope - 1.0;
        if (q > 1e-3)
            flat += g(Hend) * Hend / q;
    }
    double eps = 5e-4;
    double gH = g(H);
    double dgH = (g(H * (1.0 + eps)) - g(H * (1.0 - eps))) / (2.0 * eps * H);
    double osc = -std::sin(xi * H) * gH / xi -
                 std::cos(xi * H) * dgH / (xi * xi);

    return 2.0 * (inner + mid + flat - osc);
}

} // namespace

SymbolTable compute_symbol(const LevyKernel &k, const Point &x0, int n,
                           double period) {
    if (k.dim != 1)
        throw config_error("compute_symbol: only d=1 is supported");
    if (!k.coefficient.symmetric_in_h)
        throw config_error("compute_symbol: asymmetric coefficient gives a "
                           "complex symbol; unsupported");
    SymbolTable s;
    s.dim = 1;
    s.n = n;
    s.period = period;
    s.values.assign(n, 0.0);
    GridFunction probe(1, n, period);
    const Modulus &vph = k.bernstein.varphi;
    auto g = [&](double h) {
        return k.coefficient.eval(x0, {h, 0.0}) / (h * vph.eval(h));
    };
    for (int m = 1; m <= n / 2; ++m) {
        double xi = 2.0 * PI * m / period;
        double v = symbol_1d(g, xi);
        s.values[m] = v;
        if (m < n / 2)
            s.values[n - m] = v;
    }
    return s;
}

HeatKernelGrid density(const BernsteinSpec &b, double t, int dim, int n,
                       double period) {
    if (!(t > 0.0))
        throw config_error("density: t must be positive");
    GridFunction probe(dim, n, period);
    double xi_max = PI * n / period;
    double tail = std::exp(-t * b.phi(xi_max * xi_max));
    if (tail >= 1e-14) {
        // suggest the dyadic n that buries the spectral tail
        double lam = b.phi_inverse(14.0 * std::log(10.0) / t);
        double need = std::sqrt(lam) * period / PI;
        int sug = 4;
        while (sug < need && sug < (1 << 28))
            sug <<= 1;
        throw guard_error(
            "density: spectral tail " + std::to_string(tail) +
            " at the Nyquist frequency exceeds 1e-14; use n >= " +
            std::to_string(sug));
    }
    std::vector<cplx> spec(probe.size());
    double scale = probe.size() / std::pow(period, dim);
    if (dim == 1) {
        for (int k = 0; k < n; ++k) {
            double xi = probe.xi(k);
            spec[k] = scale * (xi == 0.0 ? 1.0 : std::exp(-t * b.phi(xi * xi)));
        }
    } else {
        for (int ky = 0; ky < n; ++ky)
            for (int kx = 0; kx < n; ++kx) {
                double xx = probe.xi(kx), yy = probe.xi(ky);
                double q = xx * xx + yy * yy;
                spec[static_cast<size_t>(ky) * n + kx] =
                    scale * (q == 0.0 ? 1.0 : std::exp(-t * b.phi(q)));
            }
    }
    HeatKernelGrid out;
    out.t = t;
    out.grid = GridFunction::from_spectrum(dim, n, period, spec);
    out.spectral_cutoff = xi_max;

    double undershoot = 0.0, peak = 0.0;
    for (double v : out.grid.values()) {
        undershoot = std::min(undershoot, v);
        peak = std::max(peak, v);
    }
    if (undershoot < -1e-8 * std::max(1.0, peak))
        throw guard_error("density: spectral ringing undershoot beyond guard");
    if (std::abs(out.grid.integral() - 1.0) > 1e-6)
        throw guard_error("density: discrete mass deviates from 1");
    return out;
}

namespace {

double envelope_bound(const BernsteinSpec &b, double t, double x, int dim) {
    double space = std::pow(b.phi_inverse(1.0 / t), 0.5 * dim);
    if (x == 0.0)
        return space;
    double ax = std::abs(x);
    return std::min(space, t * b.phi(1.0 / (ax * ax)) / std::pow(ax, dim));
}

} // namespace

BoundReport check_twosided(const BernsteinSpec &b,
                           const std::vector<double> &t_list,
                           const std::vector<double> &x_list, int n,
                           double period) {
    BoundReport rep;
    for (double t : t_list) {
        HeatKernelGrid q = density(b, t, 1, n, period);
        double dx = q.grid.dx();
        for (double x : x_list) {
            int i = static_cast<int>(std::lround(x / dx));
            double xs = i * dx; // snapped
            int idx = ((i % n) + n) % n;
            double ratio = q.grid[idx] / envelope_bound(b, t, xs, 1);
            if (!(ratio > 0.0))
                throw guard_error("check_twosided: nonpositive density at "
                                  "requested point");
            rep.C_hat = std::max(rep.C_hat, std::max(ratio, 1.0 / ratio));
        }
    }
    return rep;
}

BoundReport check_derivative_bound(const BernsteinSpec &b, int k,
                                   const std::vector<double> &t_list,
                                   const std::vector<double> &x_list, int n,
                                   double period) {
    if (k > 3)
        throw config_error("check_derivative_bound: k must be <= 3");
    BoundReport rep;
    for (double t : t_list) {
        HeatKernelGrid q = density(b, t, 1, n, period);
        GridFunction dq = q.grid.derivative(0, k);
        double dx = q.grid.dx();
        double tfac = std::pow(b.phi_inverse(1.0 / t), 0.5 * k);
        for (double x : x_list) {
            int i = static_cast<int>(std::lround(x / dx));
            double xs = i * dx;
            int idx = ((i % n) + n) % n;
            double bound = tfac * envelope_bound(b, t, xs, 1);
            rep.C_hat = std::max(rep.C_hat, std::abs(dq[idx]) / bound);
        }
    }
    return rep;
}

GridFunction semigroup_apply(const SymbolTable &s, double t,
                             const GridFunction &f) {
    if (s.dim != f.dim() || s.n != f.n() ||
        std::abs(s.period - f.period()) > 1e-12)
        throw config_error("semigroup_apply: grid mismatch");
    std::vector<cplx> spec = f.spectrum();
    for (size_t i = 0; i < spec.size(); ++i)
        spec[i] *= std::exp(-t * s.values[i]);
    return GridFunction::from_spectrum(f.dim(), f.n(), f.period(), spec);
}

BoundReport check_semigroup_derivative_bound(
    const BernsteinSpec &b, const GridFunction &f, int k,
    const std::vector<double> &t_list) {
    if (k > 3)
        throw config_error("check_semigroup_derivative_bound: k must be <= 3");
    BoundReport rep;
    SymbolTable s = subordinate_symbol(b, f.dim(), f.n(), f.period());
    double sup = f.sup_norm();
    if (!(sup > 0.0))
        return rep;
    const Modulus &vph = b.varphi;
    for (double t : t_list) {
        GridFunction g = semigroup_apply(s, t, f).derivative(0, k);
        double vinv = invert([&](double r) { return vph.eval(r); }, t);
        rep.C_hat = std::max(rep.C_hat,
                             g.sup_norm() * std::pow(vinv, k) / sup);
    }
    return rep;
}

GridFunction solve_constant(const SymbolTable &s, const GridFunction &f) {
    if (s.dim != f.dim() || s.n != f.n() ||
        std::abs(s.period - f.period()) > 1e-12)
        throw config_error("solve_constant: grid mismatch");
    if (std::abs(f.mean()) > 1e-10 * (f.sup_norm() + 1.0))
        throw guard_error("solve_constant: f must have zero mean "
                          "(compatibility with symbol(0)=0)");
    std::vector<cplx> spec = f.spectrum();
    for (size_t i = 0; i < spec.size(); ++i) {
        if (i == 0) {
            spec[i] = 0.0;
            continue;
        }
        if (!(s.values[i] > 0.0)) {
            if (std::abs(spec[i]) > 1e-12 * f.n())
                throw guard_error("solve_constant: symbol vanishes on an "
                                  "active mode");
            spec[i] = 0.0;
            continue;
        }
        spec[i] = -spec[i] / s.values[i];
    }
    return GridFunction::from_spectrum(f.dim(), f.n(), f.period(), spec);
}

GridFunction potential_time_quadrature(const SymbolTable &s,
                                       const GridFunction &f, int steps) {
    if (steps % 2 != 0)
        ++steps;
    if (std::abs(f.mean()) > 1e-10 * (f.sup_norm() + 1.0))
        throw guard_error("potential: f must have zero mean");
    double smin = 1e300;
    for (size_t i = 1; i < s.values.size(); ++i)
        if (s.values[i] > 0.0)
            smin = std::min(smin, s.values[i]);
    double T = std::log(1e8) / smin;
    std::vector<cplx> spec = f.spectrum();
    for (size_t i = 0; i < spec.size(); ++i) {
        if (i == 0 || !(s.values[i] > 0.0)) {
            spec[i] = 0.0;
            continue;
        }
        double sv = s.values[i];
        double Ti = std::min(T, 20.0 / sv); // resolve e^{-t s} per mode
        double hstep = Ti / steps;
        double acc = 1.0 + std::exp(-Ti * sv); // endpoints
        for (int j = 1; j < steps; ++j)
            acc += (j % 2 == 1 ? 4.0 : 2.0) * std::exp(-j * hstep * sv);
        double integral = acc * hstep / 3.0 + std::exp(-Ti * sv) / sv;
        spec[i] *= integral;
    }
    return GridFunction::from_spectrum(f.dim(), f.n(), f.period(), spec);
}

} // namespace nlh
