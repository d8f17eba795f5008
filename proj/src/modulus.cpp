#include "nlholder/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "nlholder/quad.hpp"

namespace nlh {

void Modulus::normalize() {
    double v1 = raw_(1.0);
    if (!(v1 > 0.0) || !std::isfinite(v1))
        throw config_error("modulus: value at r=1 must be positive finite");
    scale_ = 1.0 / v1;
}

double Modulus::eval(double r) const {
    if (!raw_)
        throw config_error("modulus: evaluating an empty modulus");
    if (!(r > 0.0))
        throw config_error("modulus: r must be positive");
    if (r_max_ > 0.0 && r > r_max_ * (1.0 + 1e-12))
        throw config_error("modulus: r above domain bound");
    double v = scale_ * raw_(r);
    if (!(v > 0.0) || !std::isfinite(v))
        throw guard_error("modulus: non-positive or non-finite value");
    return v;
}

Modulus Modulus::power(double alpha) {
    Modulus m;
    m.raw_ = [alpha](double r) { return std::pow(r, alpha); };
    m.family_ = "power(" + std::to_string(alpha) + ")";
    m.normalize();
    return m;
}

Modulus Modulus::power_log(double alpha, double beta) {
    Modulus m;
    m.raw_ = [alpha, beta](double r) {
        return std::pow(r, alpha) * std::pow(std::abs(std::log(2.0 / r)), beta);
    };
    m.family_ = "power_log(" + std::to_string(alpha) + "," +
                std::to_string(beta) + ")";
    m.r_max_ = 1.0; // the log factor degenerates at r=2
    m.normalize();
    return m;
}

Modulus Modulus::product(const Modulus &m1, const Modulus &m2) {
    Modulus m;
    m.raw_ = [m1, m2](double r) { return m1.eval(r) * m2.eval(r); };
    m.family_ = "product(" + m1.family_ + "," + m2.family_ + ")";
    if (m1.r_max_ > 0.0 || m2.r_max_ > 0.0) {
        double a = m1.r_max_ > 0.0 ? m1.r_max_ : m2.r_max_;
        double b = m2.r_max_ > 0.0 ? m2.r_max_ : m1.r_max_;
        m.r_max_ = std::min(a, b);
    }
    m.normalize();
    return m;
}

Modulus Modulus::ratio_by_r(const Modulus &base) {
    Modulus m;
    m.raw_ = [base](double r) { return base.eval(r) / r; };
    m.family_ = "ratio_by_r(" + base.family_ + ")";
    m.r_max_ = base.r_max_;
    m.normalize();
    return m;
}

Modulus Modulus::tabulated(const std::vector<double> &r,
                           const std::vector<double> &values) {
    if (r.size() != values.size() || r.size() < 2)
        throw config_error("tabulated modulus: need >= 2 matching samples");
    for (size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || !(values[i] > 0.0))
            throw config_error("tabulated modulus: samples must be positive");
        if (i > 0 && r[i] <= r[i - 1])
            throw config_error("tabulated modulus: r samples must increase");
    }
    std::vector<double> lr(r.size()), lv(values.size());
    for (size_t i = 0; i < r.size(); ++i) {
        lr[i] = std::log(r[i]);
        lv[i] = std::log(values[i]);
    }
    Modulus m;
    m.raw_ = [lr, lv](double x) {
        double lx = std::log(x);
        if (lx < lr.front() - 1e-12)
            throw config_error(
                "tabulated modulus: extrapolation below smallest sample");
        auto it = std::upper_bound(lr.begin(), lr.end(), lx);
        size_t hi = std::min<size_t>(lr.size() - 1,
                                     std::max<size_t>(1, it - lr.begin()));
        size_t lo = hi - 1;
        double w = (lx - lr[lo]) / (lr[hi] - lr[lo]);
        return std::exp(lv[lo] + w * (lv[hi] - lv[lo]));
    };
    m.family_ = "tabulated";
    m.r_max_ = r.back();
    m.normalize();
    return m;
}

Modulus Modulus::custom(std::string name, std::function<double(double)> f,
                        double r_max) {
    Modulus m;
    m.raw_ = std::move(f);
    m.family_ = std::move(name);
    m.r_max_ = r_max;
    m.normalize();
    return m;
}

IndexInterval Modulus::indices(int depth) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->by_depth.find(depth);
        if (it != cache_->by_depth.end())
            return it->second;
    }
    IndexInterval iv = estimate_indices(*this, depth);
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->by_depth.emplace(depth, iv);
    return iv;
}

IndexInterval estimate_indices(const Modulus &m, int depth) {
    if (depth < 4)
        throw config_error("estimate_indices: depth must be >= 4");
    // Deep-window scan: indices are r->0 asymptotics, and shallow pairs of
    // log-perturbed powers carry O(1) bias (see project notes).
    int k_min = (depth + 1) / 2;
    std::vector<double> logv(depth + 1);
    for (int j = k_min; j <= depth; ++j)
        logv[j] = std::log(m.eval(std::ldexp(1.0, -j)));
    const double ln2 = std::log(2.0);
    double lo = 1e300, hi = -1e300;
    for (int j = k_min + 1; j <= depth; ++j) {
        for (int k = k_min; k < j; ++k) {
            double slope = (logv[k] - logv[j]) / ((j - k) * ln2);
            lo = std::min(lo, slope);
            hi = std::max(hi, slope);
        }
    }
    return IndexInterval{lo, hi, depth};
}

BernsteinSpec BernsteinSpec::stable(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("stable: alpha must lie in (0,1)");
    BernsteinSpec b;
    b.family = "stable";
    b.alpha = alpha;
    b.phi = [alpha](double lam) { return std::pow(lam, alpha); };
    double c = alpha / std::tgamma(1.0 - alpha);
    b.levy_density = [alpha, c](double t) {
        return c * std::pow(t, -1.0 - alpha);
    };
    b.varphi = Modulus::custom(
        "varphi[stable(" + std::to_string(alpha) + ")]",
        [alpha](double r) { return std::pow(r, 2.0 * alpha); });
    return b;
}

BernsteinSpec BernsteinSpec::stable_log(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(alpha + beta < 1.0))
        throw config_error("stable_log: need alpha,beta > 0, alpha+beta < 1");
    BernsteinSpec b;
    b.family = "stable_log";
    b.alpha = alpha;
    b.beta = beta;
    const double ln2 = std::log(2.0);
    b.phi = [alpha, beta, ln2](double lam) {
        return std::pow(lam, alpha) * std::log1p(std::pow(lam, beta)) / ln2;
    };
    // Levy density surrogate mu(t) = -d/dt phi(1/t) (analytic derivative);
    // comparability-accurate, which is what the j(r) scans consume.
    b.levy_density = [alpha, beta, ln2](double t) {
        double tb = std::pow(t, -beta);
        return (alpha * std::pow(t, -1.0 - alpha) * std::log1p(tb) +
                beta * std::pow(t, -1.0 - alpha - beta) / (1.0 + tb)) /
               ln2;
    };
    auto phi = b.phi;
    b.varphi = Modulus::custom(
        "varphi[stable_log(" + std::to_string(alpha) + "," +
            std::to_string(beta) + ")]",
        [phi](double r) { return 1.0 / phi(1.0 / (r * r)); });
    return b;
}

BernsteinSpec BernsteinSpec::custom(std::string name,
                                    std::function<double(double)> phi) {
    if (std::abs(phi(1.0) - 1.0) > 1e-12)
        throw config_error("custom Bernstein: phi(1) must equal 1");
    BernsteinSpec b;
    b.family = std::move(name);
    b.phi = phi;
    b.varphi = Modulus::custom(
        "varphi[" + b.family + "]",
        [phi](double r) { return 1.0 / phi(1.0 / (r * r)); });
    return b;
}

double BernsteinSpec::phi_inverse(double y) const { return invert(phi, y); }

ScalingReport check_scaling(const BernsteinSpec &b,
                            const ScalingCertificate &cert,
                            const std::vector<double> &lambda_grid,
                            const std::vector<double> &r_grid) {
    ScalingReport rep;
    rep.worst_margin = 1e300;
    for (double lam : lambda_grid) {
        if (lam < 1.0)
            throw config_error("check_scaling: lambda grid must be >= 1");
        for (double r : r_grid) {
            double lhs = b.phi(lam * r);
            double low = cert.a1 * std::pow(lam, cert.delta1) * b.phi(r);
            double high = cert.a2 * std::pow(lam, cert.delta2) * b.phi(r);
            double margin =
                std::min((lhs - low) / lhs, (high - lhs) / high);
            rep.worst_margin = std::min(rep.worst_margin, margin);
        }
    }
    rep.holds = rep.worst_margin >= -1e-12;
    return rep;
}

ScalingCertificate fit_certificate(const BernsteinSpec &b, double delta1,
                                   double delta2,
                                   const std::vector<double> &lambda_grid,
                                   const std::vector<double> &r_grid) {
    ScalingCertificate cert;
    cert.delta1 = delta1;
    cert.delta2 = delta2;
    double a1 = 1e300, a2 = 0.0;
    for (double lam : lambda_grid) {
        for (double r : r_grid) {
            double q = b.phi(lam * r) / b.phi(r);
            a1 = std::min(a1, q / std::pow(lam, delta1));
            a2 = std::max(a2, q / std::pow(lam, delta2));
        }
    }
    cert.a1 = std::min(a1, 1.0);
    cert.a2 = std::max(a2, 1.0);
    return cert;
}

BernsteinReport check_bernstein(const BernsteinSpec &b, int n_max,
                                const std::vector<double> &lambda_grid) {
    if (n_max > 8)
        throw config_error("check_bernstein: n_max must be <= 8");
    BernsteinReport rep;
    // Central differences on a multiplicative grid: the n-th difference of
    // phi(lam + i*h) over i = -n..n with binomial weights. Step grows with n
    // to keep rounding below the 1e-8 relative sign tolerance.
    for (int n = 1; n <= n_max; ++n) {
        double step_frac = 0.02 + 0.01 * n;
        double want_sign = (n % 2 == 1) ? +1.0 : -1.0; // sign of phi^(n)
        bool ok = true;
        double worst = 0.0;
        for (double lam : lambda_grid) {
            double h = lam * step_frac;
            double acc = 0.0;
            double binom = 1.0;
            for (int i = 0; i <= n; ++i) {
                double w = ((n - i) % 2 == 0 ? 1.0 : -1.0) * binom;
                acc += w * b.phi(lam + (2.0 * i - n) * 0.5 * h);
                binom = binom * (n - i) / (i + 1.0);
            }
            double deriv = acc / std::pow(h, n);
            double scale = b.phi(lam) / std::pow(lam, n) + std::abs(deriv);
            if (want_sign * deriv < -1e-8 * scale) {
                ok = false;
                worst = std::max(worst, -want_sign * deriv / scale);
            }
        }
        if (!ok) {
            rep.worst_violation = worst;
            break;
        }
        rep.alternating_signs_up_to = n;
    }
    return rep;
}

double invert(const std::function<double(double)> &f, double y, double lo_hint,
              double hi_hint) {
    if (!(y > 0.0))
        throw config_error("invert: target must be positive");
    double lo = 1.0, hi = 1.0;
    // Bracket on the log scale.
    while (f(lo) > y) {
        lo *= 0.25;
        if (lo < lo_hint)
            throw config_error("invert: target below range");
    }
    while (f(hi) < y) {
        hi *= 4.0;
        if (hi > hi_hint)
            throw config_error("invert: target above range");
    }
    double llo = std::log(lo), lhi = std::log(hi);
    for (int it = 0; it < 200 && lhi - llo > 1e-15; ++it) {
        double lm = 0.5 * (llo + lhi);
        if (f(std::exp(lm)) < y)
            llo = lm;
        else
            lhi = lm;
    }
    return std::exp(0.5 * (llo + lhi));
}

double tail_integral(const Modulus &varphi, double r, double R_max) {
    IndexInterval iv = varphi.indices(20);
    if (!(iv.m > 0.0))
        throw guard_error("tail_integral: lower index of varphi must be > 0 "
                          "(integral diverges otherwise)");
    auto integrand = [&varphi](double ls) {
        double s = std::exp(ls);
        return 1.0 / varphi.eval(s); // ds/(s*varphi(s)) with s = e^{ls}
    };
    auto tail_estimate = [&varphi](double R) {
        // local log-slope p at R; remainder ~ 1/(p*varphi(R))
        double p = std::log(varphi.eval(R * 1.01) / varphi.eval(R)) /
                   std::log(1.01);
        if (!(p > 0.0))
            p = 1e-3;
        return 1.0 / (p * varphi.eval(R));
    };
    double R = R_max;
    if (R <= 0.0) {
        R = std::max(r * 4.0, 16.0);
        double body =
            adaptive_simpson(integrand, std::log(r), std::log(R), 1e-10);
        while (tail_estimate(R) > 1e-10 * (body + tail_estimate(R)) &&
               R < 1e14) {
            double R2 = R * 8.0;
            body += adaptive_simpson(integrand, std::log(R), std::log(R2),
                                     1e-10);
            R = R2;
        }
        return body + tail_estimate(R);
    }
    if (R <= r)
        throw config_error("tail_integral: R_max must exceed r");
    double body = adaptive_simpson(integrand, std::log(r), std::log(R), 1e-10);
    return body + tail_estimate(R);
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(count);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        out.push_back(std::exp(llo + (lhi - llo) * i / (count - 1.0)));
    return out;
}

} // namespace nlh
