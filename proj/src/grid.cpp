#include "nlholder/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

namespace nlh {

namespace {
std::mutex fftw_mutex; // FFTW plan creation is not thread-safe
}

void fft_forward(int dim, int n, std::vector<cplx> &data) {
    fftw_complex *p = reinterpret_cast<fftw_complex *>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(fftw_mutex);
        plan = dim == 1
                   ? fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE)
                   : fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lk(fftw_mutex);
    fftw_destroy_plan(plan);
}

void fft_backward(int dim, int n, std::vector<cplx> &data) {
    fftw_complex *p = reinterpret_cast<fftw_complex *>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(fftw_mutex);
        plan = dim == 1
                   ? fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE)
                   : fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lk(fftw_mutex);
        fftw_destroy_plan(plan);
    }
    double inv = 1.0 / data.size();
    for (auto &z : data)
        z *= inv;
}

GridFunction::GridFunction(int dim, int n, double period)
    : dim_(dim), n_(n), period_(period) {
    if (dim != 1 && dim != 2)
        throw config_error("GridFunction: dim must be 1 or 2");
    if (n < 4 || (n & (n - 1)) != 0)
        throw config_error("GridFunction: n must be a power of two >= 4");
    if (!(period > 0.0))
        throw config_error("GridFunction: period must be positive");
    values_.assign(dim == 1 ? n : static_cast<size_t>(n) * n, 0.0);
}

std::vector<cplx> GridFunction::spectrum() const {
    std::vector<cplx> data(values_.begin(), values_.end());
    fft_forward(dim_, n_, data);
    return data;
}

GridFunction GridFunction::from_spectrum(int dim, int n, double period,
                                         const std::vector<cplx> &spec) {
    GridFunction g(dim, n, period);
    if (spec.size() != g.size())
        throw config_error("from_spectrum: size mismatch");
    std::vector<cplx> data = spec;
    fft_backward(dim, n, data);
    for (size_t i = 0; i < data.size(); ++i)
        g.values_[i] = data[i].real();
    return g;
}

GridFunction GridFunction::derivative(int axis, int order) const {
    if (axis < 0 || axis >= dim_)
        throw config_error("derivative: axis out of range");
    if (order < 0)
        throw config_error("derivative: negative order");
    if (order == 0)
        return *this;
    std::vector<cplx> spec = spectrum();
    const cplx I(0.0, 1.0);
    auto mult = [&](int k) -> cplx {
        // odd-order derivatives kill the unpaired Nyquist mode
        if (order % 2 == 1 && k == n_ / 2)
            return 0.0;
        return std::pow(I * xi(k), order);
    };
    if (dim_ == 1) {
        for (int k = 0; k < n_; ++k)
            spec[k] *= mult(k);
    } else {
        for (int ky = 0; ky < n_; ++ky)
            for (int kx = 0; kx < n_; ++kx)
                spec[static_cast<size_t>(ky) * n_ + kx] *=
                    mult(axis == 0 ? kx : ky);
    }
    return from_spectrum(dim_, n_, period_, spec);
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::mean() const {
    double s = 0.0;
    for (double v : values_)
        s += v;
    return s / values_.size();
}

double GridFunction::integral() const {
    double cell = std::pow(dx(), dim_);
    double s = 0.0;
    for (double v : values_)
        s += v;
    return s * cell;
}

void GridFunction::check_finite(const std::string &who) const {
    for (double v : values_)
        if (!std::isfinite(v))
            throw guard_error(who + ": non-finite grid value");
}

GridFunction &GridFunction::operator+=(const GridFunction &o) {
    if (o.size() != size())
        throw config_error("grid mismatch in +=");
    for (size_t i = 0; i < size(); ++i)
        values_[i] += o.values_[i];
    return *this;
}

GridFunction &GridFunction::operator-=(const GridFunction &o) {
    if (o.size() != size())
        throw config_error("grid mismatch in -=");
    for (size_t i = 0; i < size(); ++i)
        values_[i] -= o.values_[i];
    return *this;
}

GridFunction &GridFunction::operator*=(double c) {
    for (auto &v : values_)
        v *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction &b) {
    a += b;
    return a;
}
GridFunction operator-(GridFunction a, const GridFunction &b) {
    a -= b;
    return a;
}
GridFunction operator*(double c, GridFunction a) {
    a *= c;
    return a;
}

GridFunction hadamard(const GridFunction &a, const GridFunction &b) {
    if (a.size() != b.size())
        throw config_error("hadamard: grid mismatch");
    GridFunction out = a;
    for (size_t i = 0; i < out.size(); ++i)
        out[i] *= b[i];
    return out;
}

void GridFunction::save_csv(const std::string &path) const {
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (!f)
        throw config_error("save_csv: cannot open " + path);
    std::fprintf(f, "index,value\n");
    for (size_t i = 0; i < values_.size(); ++i)
        std::fprintf(f, "%zu,%.17g\n", i, values_[i]);
    std::fclose(f);
}

void GridFunction::save_f64(const std::string &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw config_error("save_f64: cannot open " + path);
    out.write(reinterpret_cast<const char *>(values_.data()),
              static_cast<std::streamsize>(values_.size() * sizeof(double)));
    nlohmann::json side = {{"dim", dim_}, {"n", n_}, {"period", period_}};
    std::ofstream js(path + ".json");
    js << side.dump(2) << "\n";
}

GridFunction GridFunction::load_f64(const std::string &path) {
    std::ifstream js(path + ".json");
    if (!js)
        throw config_error("load_f64: missing sidecar for " + path);
    nlohmann::json side;
    js >> side;
    GridFunction g(side.at("dim").get<int>(), side.at("n").get<int>(),
                   side.at("period").get<double>());
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("load_f64: cannot open " + path);
    in.read(reinterpret_cast<char *>(g.values_.data()),
            static_cast<std::streamsize>(g.values_.size() * sizeof(double)));
    if (!in)
        throw config_error("load_f64: short read on " + path);
    return g;
}

} // namespace nlh
