#include "nlholder/funcspace.hpp"

#include <algorithm>
#include <cmath>

#include "nlholder/rng.hpp"

namespace nlh {

GridFunction difference(const GridFunction &f, const std::array<int, 2> &h,
                        int order) {
    if (order != 1 && order != 2)
        throw config_error("difference: order must be 1 or 2");
    int n = f.n();
    GridFunction out(f.dim(), n, f.period());
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    if (f.dim() == 1) {
        for (int i = 0; i < n; ++i) {
            double fp = f[wrap(i + h[0])];
            if (order == 1)
                out[i] = fp - f[i];
            else
                out[i] = fp - 2.0 * f[i] + f[wrap(i - h[0])];
        }
    } else {
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                size_t c = static_cast<size_t>(iy) * n + ix;
                size_t p = static_cast<size_t>(wrap(iy + h[1])) * n +
                           wrap(ix + h[0]);
                if (order == 1) {
                    out[c] = f[p] - f[c];
                } else {
                    size_t q = static_cast<size_t>(wrap(iy - h[1])) * n +
                               wrap(ix - h[0]);
                    out[c] = f[p] - 2.0 * f[c] + f[q];
                }
            }
        }
    }
    return out;
}

namespace {

// Enumerate grid offsets with 0 < |h| <= 1, one per +/- pair (the sup over
// x of |Delta_h f| is invariant under h -> -h after a shift in x).
std::vector<std::array<int, 2>> admissible_offsets(const GridFunction &f) {
    double dx = f.dx();
    if (dx > 1.0)
        throw guard_error("seminorm: grid spacing exceeds 1");
    int M = static_cast<int>(std::floor(1.0 / dx));
    M = std::min(M, f.n() / 2);
    std::vector<std::array<int, 2>> offs;
    if (f.dim() == 1) {
        for (int m = 1; m <= M; ++m)
            offs.push_back({m, 0});
    } else {
        for (int my = 0; my <= M; ++my) {
            for (int mx = (my == 0 ? 1 : -M); mx <= M; ++mx) {
                double r = dx * std::sqrt(double(mx) * mx + double(my) * my);
                if (r > 0.0 && r <= 1.0)
                    offs.push_back({mx, my});
            }
        }
    }
    return offs;
}

} // namespace

double seminorm(const GridFunction &f, const Modulus &psi, int j, int order) {
    double dx = f.dx();
    double best = 0.0;
    for (const auto &h : admissible_offsets(f)) {
        double r = dx * std::sqrt(double(h[0]) * h[0] + double(h[1]) * h[1]);
        double weight = std::pow(r, j) / psi.eval(r);
        GridFunction d = difference(f, h, order);
        best = std::max(best, weight * d.sup_norm());
    }
    return best;
}

HolderReport holder_norm(const GridFunction &f, const Modulus &psi,
                         int index_depth) {
    IndexInterval iv = psi.indices(index_depth);
    if (integer_distance(iv.m) < 0.02)
        throw guard_error("holder_norm: lower index of psi within 0.02 of an "
                          "integer; order selection is ambiguous");
    int k = static_cast<int>(std::ceil(iv.m)) - 1;
    if (k < 0)
        throw guard_error("holder_norm: lower index of psi must be positive");

    HolderReport rep;
    rep.psi = psi;
    rep.k = k;
    rep.sup_norm = f.sup_norm();
    rep.deriv_sup_norms.assign(k + 1, 0.0);
    rep.deriv_sup_norms[0] = rep.sup_norm;

    // psi_k(r) = psi(r) r^{-k}: the weight for the k-th derivatives.
    Modulus psi_k = psi;
    for (int i = 0; i < k; ++i)
        psi_k = Modulus::ratio_by_r(psi_k);
    // ratio_by_r renormalizes at 1; psi(1)=1 so the rescale factor is 1 and
    // psi_k(r) = psi(r) r^{-k} exactly.

    if (f.dim() == 1) {
        GridFunction d = f;
        for (int j = 1; j <= k; ++j) {
            d = d.derivative(0, 1);
            rep.deriv_sup_norms[j] = d.sup_norm();
        }
        rep.seminorm_first = seminorm(d, psi_k, 0, 1);
    } else {
        double semi = 0.0;
        for (int jx = 0; jx <= k; ++jx) {
            int jy = k - jx;
            GridFunction d = f.derivative(0, jx).derivative(1, jy);
            semi = std::max(semi, seminorm(d, psi_k, 0, 1));
        }
        rep.seminorm_first = semi;
        for (int j = 1; j <= k; ++j) {
            double best = 0.0;
            for (int jx = 0; jx <= j; ++jx)
                best = std::max(
                    best, f.derivative(0, jx).derivative(1, j - jx).sup_norm());
            rep.deriv_sup_norms[j] = best;
        }
    }
    rep.seminorm_second = seminorm(f, psi, 0, 2);
    rep.norm = rep.seminorm_first;
    for (double v : rep.deriv_sup_norms)
        rep.norm += v;
    return rep;
}

GridFunction mollify(const GridFunction &f, double eps) {
    double dx = f.dx();
    if (eps < 2.0 * dx)
        throw guard_error("mollify: eps below twice the grid spacing");
    if (2.0 * eps > f.period())
        throw guard_error("mollify: bump support exceeds the box");
    int n = f.n();
    GridFunction rho(f.dim(), n, f.period());
    auto bump = [](double s2) {
        return s2 < 1.0 ? std::exp(-1.0 / (1.0 - s2)) : 0.0;
    };
    double L = f.period();
    auto wrapped = [L](double x) {
        double y = std::fmod(x, L);
        if (y > 0.5 * L)
            y -= L;
        return y;
    };
    if (f.dim() == 1) {
        for (int i = 0; i < n; ++i) {
            double x = wrapped(i * dx) / eps;
            rho[i] = bump(x * x);
        }
    } else {
        for (int iy = 0; iy < n; ++iy) {
            double y = wrapped(iy * dx) / eps;
            for (int ix = 0; ix < n; ++ix) {
                double x = wrapped(ix * dx) / eps;
                rho[static_cast<size_t>(iy) * n + ix] = bump(x * x + y * y);
            }
        }
    }
    double mass = rho.integral();
    if (!(mass > 0.0))
        throw guard_error("mollify: discrete bump has no mass");
    rho *= 1.0 / mass;

    std::vector<cplx> F = f.spectrum();
    std::vector<cplx> P = rho.spectrum();
    double cell = std::pow(dx, f.dim());
    for (size_t i = 0; i < F.size(); ++i)
        F[i] *= P[i] * cell;
    return GridFunction::from_spectrum(f.dim(), n, f.period(), F);
}

GridFunction random_holder_sample(const Modulus &psi, uint64_t seed, int n,
                                  int dim, double period,
                                  double band_fraction) {
    GridFunction g(dim, n, period);
    int kmax = static_cast<int>(band_fraction * (n / 2 - 1));
    kmax = std::max(1, std::min(kmax, n / 2 - 1));
    std::vector<cplx> spec(g.size(), cplx(0.0, 0.0));
    double base = 2.0 * PI / period;
    size_t N = g.size();

    // Half-lattice enumeration; each vector contributes a conjugate pair so
    // the inverse transform is real.
    auto add_mode = [&](int kx, int ky, uint64_t stream) {
        double kk = base * std::sqrt(double(kx) * kx + double(ky) * ky);
        if (kk <= 0.0 || 1.0 / kk > 1.0)
            return; // psi is a modulus on (0,1]
        CounterRng rng(seed, stream);
        double amp = psi.eval(1.0 / kk) * std::pow(kk, -dim) *
                     rng.uniform(0.5, 1.0);
        double theta = rng.uniform(0.0, 2.0 * PI);
        cplx c = 0.5 * amp * std::exp(cplx(0.0, theta));
        auto idx = [&](int ax, int ay) {
            int ix = ((ax % n) + n) % n;
            int iy = ((ay % n) + n) % n;
            return dim == 1 ? static_cast<size_t>(ix)
                            : static_cast<size_t>(iy) * n + ix;
        };
        spec[idx(kx, ky)] += static_cast<double>(N) * c;
        spec[idx(-kx, -ky)] += static_cast<double>(N) * std::conj(c);
    };

    if (dim == 1) {
        for (int k = 1; k <= kmax; ++k)
            add_mode(k, 0, static_cast<uint64_t>(k));
    } else {
        uint64_t stream = 0;
        for (int ky = 0; ky <= kmax; ++ky) {
            for (int kx = (ky == 0 ? 1 : -kmax); kx <= kmax; ++kx) {
                ++stream;
                if (kx * kx + ky * ky <= kmax * kmax)
                    add_mode(kx, ky, stream);
            }
        }
    }
    return GridFunction::from_spectrum(dim, n, period, spec);
}

} // namespace nlh
