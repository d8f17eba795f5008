#include "nlholder/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "nlholder/rng.hpp"

namespace nlh {

namespace {

// Kanter's representation of the standard positive alpha-stable variable:
// S = (a(U)/E)^{(1-alpha)/alpha},
// a(u) = [sin(alpha u)^alpha sin((1-alpha)u)^{1-alpha} / sin(u)]^{1/(1-alpha)}
double kanter_a(double u, double alpha) {
    double num = alpha * std::log(std::sin(alpha * u)) +
                 (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * u)) -
                 std::log(std::sin(u));
    return std::exp(num / (1.0 - alpha));
}

} // namespace

std::vector<double> sample_stable_subordinator(double alpha, double t, int n,
                                               uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("subordinator: alpha must lie in (0,1)");
    if (!(t > 0.0) || n <= 0)
        throw config_error("subordinator: need t > 0 and n > 0");
    std::vector<double> out(n);
    double scale = std::pow(t, 1.0 / alpha);
    for (int i = 0; i < n; ++i) {
        CounterRng rng(seed, static_cast<uint64_t>(i));
        double u = rng.uniform(0.0, PI);
        double e = rng.exponential();
        double s =
            scale * std::pow(kanter_a(u, alpha) / e, (1.0 - alpha) / alpha);
        out[i] = s;
    }
    return out;
}

PathSample sample_sbm(double alpha, double t, int n, int dim, uint64_t seed) {
    if (dim != 1 && dim != 2)
        throw config_error("sbm: dim must be 1 or 2");
    PathSample p;
    p.t = t;
    p.dim = dim;
    p.seed = seed;
    p.subordinator_values = sample_stable_subordinator(alpha, t, n, seed);
    p.increments.resize(n);
    for (int i = 0; i < n; ++i) {
        // separate stream block for the Gaussian part
        CounterRng rng(seed, 0x8000000000000000ULL + i);
        double sd = std::sqrt(2.0 * p.subordinator_values[i]);
        p.increments[i] = {sd * rng.normal(),
                           dim == 2 ? sd * rng.normal() : 0.0};
    }
    return p;
}

namespace {

// Grid CDF on [-L/2, L/2): F(edge_j) with edges at centered coordinates.
struct GridCdf {
    std::vector<double> x;   // bin left edges, ascending
    std::vector<double> cum; // CDF at each left edge
    double dx = 0.0;

    double eval(double v) const {
        if (v <= x.front())
            return 0.0;
        if (v >= x.back() + dx)
            return 1.0;
        size_t j = static_cast<size_t>((v - x.front()) / dx);
        j = std::min(j, x.size() - 1);
        double frac = (v - x[j]) / dx;
        double next = j + 1 < cum.size() ? cum[j + 1] : 1.0;
        return cum[j] + frac * (next - cum[j]);
    }
};

GridCdf make_cdf(const HeatKernelGrid &density) {
    const GridFunction &g = density.grid;
    if (g.dim() != 1)
        throw config_error("ks_compare: 1-d densities only");
    int n = g.n();
    double L = g.period(), dx = g.dx();
    GridCdf cdf;
    cdf.dx = dx;
    cdf.x.resize(n);
    cdf.cum.resize(n);
    // reorder grid values to centered coordinates x in [-L/2, L/2)
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        int idx = (j + n / 2) % n; // grid index whose coordinate wraps to x_j
        cdf.x[j] = -0.5 * L + j * dx;
        cdf.cum[j] = acc;
        acc += g[idx] * dx;
    }
    double total = acc;
    for (auto &c : cdf.cum)
        c /= total;
    return cdf;
}

} // namespace

KsReport ks_compare(const std::vector<double> &samples,
                    const HeatKernelGrid &density) {
    if (samples.empty())
        throw config_error("ks_compare: empty sample set");
    GridCdf cdf = make_cdf(density);
    double L = density.grid.period();
    std::vector<double> kept;
    kept.reserve(samples.size());
    for (double v : samples)
        if (v >= -0.5 * L && v < 0.5 * L)
            kept.push_back(v);
    KsReport rep;
    rep.n_samples = samples.size();
    rep.clipped_fraction =
        1.0 - static_cast<double>(kept.size()) / samples.size();
    if (rep.clipped_fraction > 0.01)
        throw guard_error("ks_compare: " +
                          std::to_string(rep.clipped_fraction * 100.0) +
                          "% of the samples fall outside the density box");
    std::sort(kept.begin(), kept.end());
    size_t m = kept.size();
    double ks = 0.0;
    for (size_t i = 0; i < m; ++i) {
        double f = cdf.eval(kept[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / m));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / m - f));
    }
    rep.ks = ks;
    return rep;
}

std::vector<double> sample_from_grid(const HeatKernelGrid &density, int n,
                                     uint64_t seed) {
    GridCdf cdf = make_cdf(density);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        CounterRng rng(seed, 0x4000000000000000ULL + i);
        double u = rng.uniform();
        // invert the piecewise-linear CDF
        size_t lo = 0, hi = cdf.cum.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (cdf.cum[mid] <= u)
                lo = mid;
            else
                hi = mid - 1;
        }
        double next = lo + 1 < cdf.cum.size() ? cdf.cum[lo + 1] : 1.0;
        double span = next - cdf.cum[lo];
        double frac = span > 0.0 ? (u - cdf.cum[lo]) / span : 0.0;
        out[i] = cdf.x[lo] + frac * cdf.dx;
    }
    return out;
}

} // namespace nlh
