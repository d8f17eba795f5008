#include "nlholder/nonlocal.hpp"

#include <algorithm>
#include <cmath>

#include "nlholder/quad.hpp"

namespace nlh {

namespace {

bool near_one(double v) { return std::abs(v - 1.0) < 0.02; }

} // namespace

OperatorSpec OperatorSpec::make(LevyKernel k) {
    OperatorSpec spec;
    IndexInterval idx = k.bernstein.varphi.indices(20);
    if (near_one(idx.M)) {
        // inside the band both forms coincide for symmetric coefficients
        if (!k.coefficient.symmetric_in_h)
            throw guard_error(
                "operator: M_varphi = " + std::to_string(idx.M) +
                " is inside the 0.02 guard band around 1; the compensator "
                "choice is ambiguous for an asymmetric coefficient");
        spec.compensator = Compensator::Gradient;
        spec.kernel = std::move(k);
        return spec;
    }
    if (idx.M < 1.0) {
        spec.compensator = Compensator::None;
    } else if (idx.M < 2.0) {
        spec.compensator = Compensator::Gradient;
    } else {
        throw config_error("operator: M_varphi >= 2 is unsupported");
    }
    spec.kernel = std::move(k);
    return spec;
}

QuadratureRule make_rule(const OperatorSpec &spec, int n, double period) {
    if (spec.kernel.dim != 1)
        throw config_error("quadrature rule: only d=1 is supported");
    QuadratureRule r;
    r.n = n;
    r.period = period;
    double dx = period / n;
    r.h0 = spec.inner_cutoff_cells * dx;
    r.h_inner = 0.5 * r.h0;
    r.xi_cap = spec.xi_cap > 0.0 ? spec.xi_cap : PI * n / period;
    r.far_start = 4.0 * period;
    if (r.h0 >= 1.0)
        throw config_error("quadrature rule: inner cutoff h0 >= 1; grid too "
                           "coarse for this box");

    const Modulus &vph = spec.kernel.bernstein.varphi;

    // inner moments int_0^h0 h^{m-1}/varphi(h) dh, log-scale decades down
    auto moment = [&](int m) {
        auto f = [&](double u) {
            double h = std::exp(u);
            return std::pow(h, m) / vph.eval(h);
        };
        double total = 0.0;
        double hi = std::log(r.h0);
        const double dec = std::log(10.0);
        for (int i = 0; i < 200; ++i) {
            double c = adaptive_simpson(f, hi - dec, hi, 1e-10);
            hi -= dec;
            total += c;
            if (i > 2 && std::abs(c) < 1e-13 * std::abs(total))
                break;
        }
        return total;
    };
    r.in1 = moment(1);
    r.in2 = moment(2);
    r.in3 = moment(3);
    r.in4 = moment(4);

    // oscillation-adaptive log shells on [h0, 4L]
    double base_dv = std::log(10.0) / spec.shells_per_decade;
    double v = std::log(r.h0), v_end = std::log(r.far_start);
    while (v < v_end - 1e-12) {
        double h_lo = std::exp(v);
        double dv = std::min(base_dv, spec.osc_resolution / (r.xi_cap * h_lo));
        dv = std::min(dv, v_end - v);
        double h = std::exp(v + 0.5 * dv);
        r.shell_h.push_back(h);
        r.shell_dv.push_back(dv);
        r.shell_k0.push_back(1.0 / vph.eval(h));
        v += dv;
    }

    // far field |h| > 4L: wrapped weights W(s_j) = sum_m k0(s_j + m L),
    // m = 4 .. 4+wrap_terms-1, Euler-Maclaurin completion beyond
    auto k0 = [&](double h) { return 1.0 / (h * vph.eval(h)); };
    r.far_w.assign(n, 0.0);
    double H_cut = (4.0 + spec.wrap_terms) * period;
    // k0 ~ h^{-1-q}: int_H^inf k0 = k0(H) H / q with q = slope - 1
    double slope =
        -std::log(k0(H_cut) / k0(H_cut / 1.01)) / std::log(1.01);
    double q = slope - 1.0;
    if (!(q > 1e-3))
        throw guard_error("quadrature rule: far kernel tail does not decay");
    for (int j = 0; j < n; ++j) {
        double s = j * dx;
        double w = 0.0;
        for (int m = 4; m < 4 + spec.wrap_terms; ++m)
            w += k0(s + m * period);
        double H = s + H_cut;
        w += k0(H) * (H / (q * period)) + 0.5 * k0(H);
        r.far_w[j] = w;
    }
    r.far_w[0] -= 0.5 * k0(r.far_start); // trapezoid endpoint at h = 4L
    return r;
}

namespace {

// Discrete multiplier M with F(L u) = M F(u), for the h-coefficient
// a0(h) (signed argument). Far-field coefficient is evaluated at the first
// period image, exact for h-independent coefficients.
std::vector<cplx> assemble_multiplier(const QuadratureRule &r,
                                      const std::function<double(double)> &a0,
                                      Compensator comp) {
    int n = r.n;
    double dx = r.period / n;
    std::vector<cplx> M(n, cplx(0.0, 0.0));

    double ap_in = a0(r.h_inner), am_in = a0(-r.h_inner);
    double se = ap_in + am_in, so = ap_in - am_in;

    // far sums via DFT of the coefficient-weighted wrapped kernels
    std::vector<cplx> wp(n), wm(n);
    for (int j = 0; j < n; ++j) {
        double h_rep = j * dx + r.far_start;
        wp[j] = r.far_w[j] * a0(h_rep);
        wm[j] = r.far_w[j] * a0(-h_rep);
    }
    cplx sp(0.0, 0.0), sm(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        sp += wp[j];
        sm += wm[j];
    }
    fft_forward(1, n, wp);
    fft_forward(1, n, wm);

    // positive-frequency half; mirror by M(-xi) = conj(M(xi))
    int half = n / 2;
    std::vector<cplx> acc(half + 1, cplx(0.0, 0.0));
    for (size_t s = 0; s < r.shell_h.size(); ++s) {
        double h = r.shell_h[s];
        double w = r.shell_dv[s] * r.shell_k0[s];
        double apv = a0(h), amv = a0(-h);
        double we = w * (apv + amv), wo = w * (apv - amv);
        double comp_w = (comp == Compensator::Gradient && h <= 1.0)
                            ? w * h * (apv - amv)
                            : 0.0;
        double d = 2.0 * PI * h / r.period;
        cplx rot(std::cos(d), std::sin(d)), cur(1.0, 0.0);
        for (int m = 0; m <= half; ++m) {
            double xi = 2.0 * PI * m / r.period;
            acc[m] += cplx(we * (cur.real() - 1.0),
                           wo * cur.imag() - comp_w * xi);
            cur *= rot;
        }
    }
    for (int m = 0; m <= half; ++m) {
        double xi = 2.0 * PI * m / r.period;
        double xi2 = xi * xi;
        acc[m] += se * (-0.5 * xi2 * r.in2 + xi2 * xi2 * r.in4 / 24.0);
        if (comp == Compensator::None)
            acc[m] += cplx(0.0, xi * (r.in1 - xi2 * r.in3 / 6.0)) * so;
        else
            acc[m] += cplx(0.0, -xi * xi2 * r.in3 / 6.0) * so;
        // far field: sum_j w[j] (e^{+-i xi s_j} - 1) dx
        acc[m] += dx * (wp[(n - m) % n] - sp + wm[m] - sm);
    }
    for (int m = 0; m <= half; ++m)
        M[m] = acc[m];
    M[half] = cplx(M[half].real(), 0.0); // Nyquist must stay self-conjugate
    for (int m = 1; m < half; ++m)
        M[n - m] = std::conj(M[m]);
    return M;
}

std::function<double(double)> frozen_h_coefficient(const OperatorSpec &spec,
                                                  const Point &x0) {
    const KernelCoefficient &c = spec.kernel.coefficient;
    if (c.separable()) {
        double xf = c.x_factor(x0);
        auto hf = c.h_factor;
        return [xf, hf](double h) { return xf * hf(h); };
    }
    auto a = c.a;
    return [a, x0](double h) { return a(x0, {h, 0.0}); };
}

void check_symmetry_guards(const OperatorSpec &spec) {
    if (spec.kernel.coefficient.symmetric_in_h)
        return;
    IndexInterval idx = spec.kernel.bernstein.varphi.indices(20);
    if (spec.compensator == Compensator::None && idx.M >= 1.0 - 0.02)
        throw config_error("operator: asymmetric coefficient without a "
                           "gradient compensator needs M_varphi < 1");
    if (idx.m <= 1.0 && 1.0 <= idx.M)
        throw config_error("operator: 1 in I_varphi requires an h-symmetric "
                           "coefficient");
}

} // namespace

FrozenOperator freeze_quadrature(const OperatorSpec &spec, const Point &x0,
                                 int n, double period) {
    check_symmetry_guards(spec);
    FrozenOperator op;
    op.rule = make_rule(spec, n, period);
    op.multiplier = assemble_multiplier(
        op.rule, frozen_h_coefficient(spec, x0), spec.compensator);
    return op;
}

GridFunction apply_frozen(const FrozenOperator &op, const GridFunction &u) {
    if (u.dim() != 1 || u.n() != op.rule.n ||
        std::abs(u.period() - op.rule.period) > 1e-12)
        throw config_error("apply: grid does not match the quadrature rule");
    std::vector<cplx> spec = u.spectrum();
    for (int k = 0; k < op.rule.n; ++k)
        spec[k] *= op.multiplier[k];
    return GridFunction::from_spectrum(1, op.rule.n, op.rule.period, spec);
}

GridFunction apply_L0(const OperatorSpec &spec, const Point &x0,
                      const GridFunction &u) {
    return apply_frozen(freeze_quadrature(spec, x0, u.n(), u.period()), u);
}

GridFunction apply_L(const OperatorSpec &spec, const GridFunction &u) {
    check_symmetry_guards(spec);
    const KernelCoefficient &c = spec.kernel.coefficient;
    int n = u.n();
    double L = u.period(), dx = L / n;
    QuadratureRule rule = make_rule(spec, n, L);

    if (c.separable()) {
        FrozenOperator op;
        op.rule = rule;
        op.multiplier =
            assemble_multiplier(rule, c.h_factor, spec.compensator);
        return apply_separable(spec, op, u);
    }

    // general coefficient: per-shell spectral shifts
    GridFunction out(1, n, L);
    GridFunction d1 = u.derivative(0, 1), d2 = u.derivative(0, 2);
    GridFunction d3 = u.derivative(0, 3), d4 = u.derivative(0, 4);
    GridFunction probe(1, n, L);
    for (int i = 0; i < n; ++i) {
        Point x{u.coord(i), 0.0};
        double ap = c.eval(x, {rule.h_inner, 0.0});
        double am = c.eval(x, {-rule.h_inner, 0.0});
        double acc = (ap + am) * (0.5 * d2[i] * rule.in2 +
                                  d4[i] * rule.in4 / 24.0) +
                     (ap - am) * d3[i] * rule.in3 / 6.0;
        if (spec.compensator == Compensator::None)
            acc += (ap - am) * d1[i] * rule.in1;
        out[i] = acc;
    }
    std::vector<cplx> base = u.spectrum();
    std::vector<cplx> shifted(n);
    for (size_t s = 0; s < rule.shell_h.size(); ++s) {
        double h = rule.shell_h[s];
        double w = rule.shell_dv[s] * rule.shell_k0[s];
        for (int k = 0; k < n; ++k) {
            double xi = probe.xi(k);
            // cosine convention at Nyquist keeps the shift real-to-real
            double si = k == n / 2 ? 0.0 : std::sin(xi * h);
            // u(x+h) + i u(x-h) in one pass: real-linear in u
            shifted[k] = base[k] * cplx(std::cos(xi * h), si) +
                         cplx(0.0, 1.0) * base[k] *
                             cplx(std::cos(xi * h), -si);
        }
        fft_backward(1, n, shifted);
        bool compensate =
            spec.compensator == Compensator::Gradient && h <= 1.0;
        for (int i = 0; i < n; ++i) {
            Point x{u.coord(i), 0.0};
            double ap = c.eval(x, {h, 0.0});
            double am = c.eval(x, {-h, 0.0});
            double dp = shifted[i].real() - u[i];
            double dm = shifted[i].imag() - u[i];
            double term = dp * ap + dm * am;
            if (compensate)
                term -= h * d1[i] * (ap - am);
            out[i] += w * term;
        }
    }
    // far field, grid-aligned offsets
    for (int j = 1; j < n; ++j) {
        double wj = rule.far_w[j] * dx;
        double h_rep = j * dx + rule.far_start;
        for (int i = 0; i < n; ++i) {
            Point x{u.coord(i), 0.0};
            double dp = u[(i + j) % n] - u[i];
            double dm = u[(i - j + n) % n] - u[i];
            out[i] += wj * (dp * c.eval(x, {h_rep, 0.0}) +
                            dm * c.eval(x, {-h_rep, 0.0}));
        }
    }
    {
        double w0 = rule.far_w[0] * dx; // s=0 images: zero difference
        (void)w0;
    }
    out.check_finite("apply_L");
    return out;
}

FrozenOperator separable_h_operator(const OperatorSpec &spec, int n,
                                    double period) {
    if (!spec.kernel.coefficient.separable())
        throw config_error("separable_h_operator: coefficient is not "
                           "separable");
    check_symmetry_guards(spec);
    FrozenOperator op;
    op.rule = make_rule(spec, n, period);
    op.multiplier = assemble_multiplier(
        op.rule, spec.kernel.coefficient.h_factor, spec.compensator);
    return op;
}

GridFunction apply_separable(const OperatorSpec &spec,
                             const FrozenOperator &h_op,
                             const GridFunction &u) {
    GridFunction out = apply_frozen(h_op, u);
    const auto &xf = spec.kernel.coefficient.x_factor;
    for (int i = 0; i < u.n(); ++i)
        out[i] *= xf({u.coord(i), 0.0});
    return out;
}

std::pair<OperatorSpec, OperatorSpec> freeze(const OperatorSpec &spec,
                                             const Point &x0) {
    OperatorSpec frozen = spec;
    OperatorSpec diff = spec;
    const KernelCoefficient &c = spec.kernel.coefficient;

    KernelCoefficient fc = c;
    auto a = c.a;
    fc.a = [a, x0](const Point &, const Point &h) { return a(x0, h); };
    if (c.separable()) {
        double v = c.x_factor(x0);
        fc.x_factor = [v](const Point &) { return v; };
    }
    frozen.kernel.coefficient = fc;

    KernelCoefficient bc = c;
    bc.a = [a, x0](const Point &x, const Point &h) {
        return a(x, h) - a(x0, h);
    };
    if (c.separable()) {
        auto xf = c.x_factor;
        double v = c.x_factor(x0);
        bc.x_factor = [xf, v](const Point &x) { return xf(x) - v; };
    }
    bc.lambda1 = c.lambda1 - c.lambda2;
    bc.lambda2 = c.lambda2 - c.lambda1;
    diff.kernel.coefficient = bc;
    return {frozen, diff};
}

GridFunction apply_B(const OperatorSpec &b_spec, const GridFunction &v) {
    if (!b_spec.kernel.coefficient.symmetric_in_h)
        throw config_error("difference operator: h-symmetric coefficient "
                           "required");
    return apply_L(b_spec, v);
}

namespace {

// Cumulative bump primitive I(t) = int_0^t exp(-1/(s(1-s))) ds on [0,1].
double bump_cumulative(double t) {
    static const int N = 4096;
    static std::vector<double> table = [] {
        std::vector<double> tab(N + 1, 0.0);
        auto b = [](double s) {
            return s <= 0.0 || s >= 1.0 ? 0.0
                                        : std::exp(-1.0 / (s * (1.0 - s)));
        };
        double step = 1.0 / N;
        for (int i = 1; i <= N; ++i) {
            double a = (i - 1) * step, c = i * step;
            tab[i] = tab[i - 1] +
                     step / 6.0 * (b(a) + 4.0 * b(0.5 * (a + c)) + b(c));
        }
        return tab;
    }();
    if (t <= 0.0)
        return 0.0;
    if (t >= 1.0)
        return table[N];
    double p = t * N;
    int i = static_cast<int>(p);
    return table[i] + (p - i) * (table[i + 1] - table[i]);
}

double bump_profile(double rho) {
    if (rho <= 1.0)
        return 1.0;
    if (rho >= 2.0)
        return 0.0;
    return bump_cumulative(2.0 - rho) / bump_cumulative(1.0);
}

double periodic_dist(double a, double b, double period) {
    double d = std::fmod(std::abs(a - b), period);
    return std::min(d, period - d);
}

} // namespace

Cutoff make_cutoff(int dim, int n, double period, double r, const Point &x0) {
    if (!(r > 0.0) || 4.0 * r > period)
        throw config_error("cutoff: need 0 < 2r <= period/2 so the support "
                           "fits the box");
    Cutoff c;
    c.r = r;
    c.x0 = x0;
    c.values = GridFunction(dim, n, period);
    if (dim == 1) {
        for (int i = 0; i < n; ++i) {
            double d = periodic_dist(c.values.coord(i), x0[0], period);
            c.values[i] = bump_profile(d / r);
        }
    } else {
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                double ddx = periodic_dist(c.values.coord(ix), x0[0], period);
                double ddy = periodic_dist(c.values.coord(iy), x0[1], period);
                double d = std::sqrt(ddx * ddx + ddy * ddy);
                c.values[static_cast<size_t>(iy) * n + ix] =
                    bump_profile(d / r);
            }
    }
    return c;
}

GridFunction apply_H(const OperatorSpec &spec, const GridFunction &u,
                     const Cutoff &eta, const QuadratureRule &rule) {
    const KernelCoefficient &c = spec.kernel.coefficient;
    const GridFunction &e = eta.values;
    int n = u.n();
    if (e.n() != n || u.dim() != 1 ||
        std::abs(e.period() - u.period()) > 1e-12)
        throw config_error("apply_H: cutoff grid mismatch");
    if (n != rule.n || std::abs(u.period() - rule.period) > 1e-12)
        throw config_error("apply_H: rule grid mismatch");
    double L = u.period(), dx = L / n;

    GridFunction du1 = u.derivative(0, 1), du2 = u.derivative(0, 2),
                 du3 = u.derivative(0, 3);
    GridFunction de1 = e.derivative(0, 1), de2 = e.derivative(0, 2),
                 de3 = e.derivative(0, 3);

    bool sep = c.separable();
    auto hf = c.h_factor;
    GridFunction out(1, n, L);

    // inner model: matches the Taylor moments of the apply_L inner model so
    // the product rule is exact at node level
    for (int i = 0; i < n; ++i) {
        double ap, am;
        if (sep) {
            ap = hf(rule.h_inner);
            am = hf(-rule.h_inner);
        } else {
            Point x{u.coord(i), 0.0};
            ap = c.eval(x, {rule.h_inner, 0.0});
            am = c.eval(x, {-rule.h_inner, 0.0});
        }
        double even =
            du1[i] * de1[i] * rule.in2 +
            (du1[i] * de3[i] / 6.0 + du3[i] * de1[i] / 6.0 +
             du2[i] * de2[i] / 4.0) *
                rule.in4;
        double odd = (du1[i] * de2[i] + du2[i] * de1[i]) * rule.in3 / 2.0;
        out[i] = (ap + am) * even + (ap - am) * odd;
    }

    // mid shells: one complex shift carries u and eta together
    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i)
        z[i] = cplx(u[i], e[i]);
    fft_forward(1, n, z);
    GridFunction probe(1, n, L);
    std::vector<cplx> zp(n), zm(n);
    for (size_t s = 0; s < rule.shell_h.size(); ++s) {
        double h = rule.shell_h[s];
        double w = rule.shell_dv[s] * rule.shell_k0[s];
        for (int k = 0; k < n; ++k) {
            double xi = probe.xi(k);
            // cosine convention at Nyquist keeps the shift real-to-real
            double si = k == n / 2 ? 0.0 : std::sin(xi * h);
            cplx ph(std::cos(xi * h), si);
            zp[k] = z[k] * ph;
            zm[k] = z[k] * std::conj(ph);
        }
        fft_backward(1, n, zp);
        fft_backward(1, n, zm);
        double hfp = sep ? hf(h) : 0.0, hfm = sep ? hf(-h) : 0.0;
        for (int i = 0; i < n; ++i) {
            double dup = zp[i].real() - u[i], dep = zp[i].imag() - e[i];
            double dum = zm[i].real() - u[i], dem = zm[i].imag() - e[i];
            double ap = hfp, am = hfm;
            if (!sep) {
                Point x{u.coord(i), 0.0};
                ap = c.eval(x, {h, 0.0});
                am = c.eval(x, {-h, 0.0});
            }
            out[i] += w * (ap * dup * dep + am * dum * dem);
        }
    }

    // far field: grid-aligned offsets, coefficient at the first image
    for (int j = 1; j < n; ++j) {
        double wj = rule.far_w[j] * dx;
        double h_rep = j * dx + rule.far_start;
        double hfp = sep ? hf(h_rep) : 0.0, hfm = sep ? hf(-h_rep) : 0.0;
        for (int i = 0; i < n; ++i) {
            int ip = (i + j) % n, im = (i - j + n) % n;
            double ap = hfp, am = hfm;
            if (!sep) {
                Point x{u.coord(i), 0.0};
                ap = c.eval(x, {h_rep, 0.0});
                am = c.eval(x, {-h_rep, 0.0});
            }
            out[i] += wj * (ap * (u[ip] - u[i]) * (e[ip] - e[i]) +
                            am * (u[im] - u[i]) * (e[im] - e[i]));
        }
    }
    if (sep)
        for (int i = 0; i < n; ++i)
            out[i] *= c.x_factor({u.coord(i), 0.0});
    out.check_finite("apply_H");
    return out;
}

AuxReport aux_integral(const Modulus &Psi, const Modulus &varphi, double r,
                       int dim) {
    if (!(r > 0.0))
        throw config_error("aux_integral: r must be positive");
    IndexInterval ip = Psi.indices(20), iv = varphi.indices(20);
    if (iv.M >= ip.m)
        throw guard_error(
            "aux_integral: requires M_varphi < m_Psi (got M_varphi = " +
            std::to_string(iv.M) + ", m_Psi = " + std::to_string(ip.m) + ")");
    double surface = dim == 1 ? 2.0 : 2.0 * PI;
    auto f = [&](double u) {
        double s = std::exp(u);
        return Psi.eval(s) / varphi.eval(s);
    };
    double inner = 0.0;
    double hi = std::log(r);
    const double dec = std::log(10.0);
    for (int i = 0; i < 200; ++i) {
        double c = adaptive_simpson(f, hi - dec, hi, 1e-10);
        hi -= dec;
        inner += c;
        if (i > 2 && std::abs(c) < 1e-13 * std::abs(inner))
            break;
    }
    AuxReport rep;
    rep.lhs = surface * (inner + Psi.eval(r) * tail_integral(varphi, r));
    rep.bound = Psi.eval(r) / varphi.eval(r);
    rep.ratio = rep.lhs / rep.bound;
    return rep;
}

} // namespace nlh
