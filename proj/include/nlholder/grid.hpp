#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "common.hpp"

namespace nlh {

using cplx = std::complex<double>;

// Real function sampled on a uniform periodic grid over [0,L)^dim,
// dim in {1,2}, n points per axis (power of two). Values are stored
// row-major (x index fastest in 1-d; in 2-d index = iy*n + ix).
class GridFunction {
  public:
    GridFunction() = default;
    GridFunction(int dim, int n, double period);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double period() const { return period_; }
    double dx() const { return period_ / n_; }
    size_t size() const { return values_.size(); }

    double &operator[](size_t i) { return values_[i]; }
    double operator[](size_t i) const { return values_[i]; }
    std::vector<double> &values() { return values_; }
    const std::vector<double> &values() const { return values_; }

    // Coordinate of grid point index along one axis.
    double coord(int i) const { return i * dx(); }

    // Signed integer frequency of mode index k (k - n for k > n/2).
    int freq_index(int k) const { return k <= n_ / 2 ? k : k - n_; }
    // Angular frequency 2*pi*freq/L.
    double xi(int k) const { return 2.0 * PI * freq_index(k) / period_; }

    std::vector<cplx> spectrum() const;
    static GridFunction from_spectrum(int dim, int n, double period,
                                      const std::vector<cplx> &spec);

    // Spectral partial derivative of given order along axis (0 = x, 1 = y).
    // Odd orders zero the Nyquist mode.
    GridFunction derivative(int axis, int order) const;

    double sup_norm() const;
    double mean() const;
    double integral() const; // trapezoid = dx^dim * sum (periodic)

    void check_finite(const std::string &who) const;

    GridFunction &operator+=(const GridFunction &o);
    GridFunction &operator-=(const GridFunction &o);
    GridFunction &operator*=(double c);

    void save_csv(const std::string &path) const;
    // Raw little-endian float64 dump plus a JSON sidecar {dim, n, period}.
    void save_f64(const std::string &path) const;
    static GridFunction load_f64(const std::string &path);

  private:
    int dim_ = 1;
    int n_ = 0;
    double period_ = 2.0 * PI;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction &b);
GridFunction operator-(GridFunction a, const GridFunction &b);
GridFunction operator*(double c, GridFunction a);
// Pointwise product.
GridFunction hadamard(const GridFunction &a, const GridFunction &b);

// In-place forward/backward c2c FFT on a flattened dim-dimensional array of
// extent n per axis. Backward is normalized (inverse).
void fft_forward(int dim, int n, std::vector<cplx> &data);
void fft_backward(int dim, int n, std::vector<cplx> &data);

} // namespace nlh
