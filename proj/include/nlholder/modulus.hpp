#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "common.hpp"

namespace nlh {

// Lower/upper scaling indices estimated from a dyadic log-ratio scan.
struct IndexInterval {
    double m = 0.0; // lower index
    double M = 0.0; // upper index
    int depth = 0;  // dyadic depth of the scan
};

// Evaluable modulus of continuity on (0, r_max], normalized so eval(1)=1.
// Immutable after construction; the index cache is write-once per depth.
class Modulus {
  public:
    Modulus() = default;

    static Modulus power(double alpha);
    // r^alpha * |ln(2/r)|^beta, normalized at r=1.
    static Modulus power_log(double alpha, double beta);
    static Modulus product(const Modulus &m1, const Modulus &m2);
    // r^{-1} * m(r), normalized at r=1.
    static Modulus ratio_by_r(const Modulus &m);
    // Log-spaced samples, log-log linear interpolation; no extrapolation
    // below the smallest sample.
    static Modulus tabulated(const std::vector<double> &r,
                             const std::vector<double> &values);
    // Arbitrary positive evaluable, normalized at r=1.
    static Modulus custom(std::string name, std::function<double(double)> f,
                          double r_max = 0.0 /* 0 = unbounded */);

    double eval(double r) const;
    double operator()(double r) const { return eval(r); }

    IndexInterval indices(int depth = 20) const;

    const std::string &family() const { return family_; }
    double r_max() const { return r_max_; }
    bool valid() const { return static_cast<bool>(raw_); }

  private:
    std::function<double(double)> raw_;
    double scale_ = 1.0;   // 1 / raw(1)
    double r_max_ = 0.0;   // 0 means unbounded above
    std::string family_;

    struct Cache {
        std::mutex mu;
        std::map<int, IndexInterval> by_depth;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

    void normalize();
};

// Dyadic log-ratio index estimate over pairs r=2^-j, R=2^-k with
// ceil(depth/2) <= k < j <= depth (deep window; indices are r->0 asymptotics).
IndexInterval estimate_indices(const Modulus &m, int depth = 20);

// Certificate for a_1 lambda^{d1} phi(r) <= phi(lambda r) <= a_2 lambda^{d2} phi(r),
// lambda >= 1. tail_constant reports the derived bound constant 1/(2 a1 d1).
struct ScalingCertificate {
    double delta1 = 0.0, delta2 = 0.0;
    double a1 = 1.0, a2 = 1.0;
    double tail_constant() const { return 1.0 / (2.0 * a1 * delta1); }
};

// Bernstein function phi with phi(1)=1, zero drift, its Levy density, and
// the induced order function varphi(r) = 1/phi(r^-2).
struct BernsteinSpec {
    std::string family; // "stable", "stable_log", "custom"
    double alpha = 0.0, beta = 0.0;
    std::function<double(double)> phi;
    std::function<double(double)> levy_density; // may be empty
    Modulus varphi;

    static BernsteinSpec stable(double alpha);
    static BernsteinSpec stable_log(double alpha, double beta);
    static BernsteinSpec custom(std::string name,
                                std::function<double(double)> phi);

    double phi_inverse(double y) const;
    bool has_levy_density() const { return static_cast<bool>(levy_density); }
};

struct ScalingReport {
    bool holds = false;
    double worst_margin = 0.0; // min relative slack; negative = violated
};

ScalingReport check_scaling(const BernsteinSpec &b,
                            const ScalingCertificate &cert,
                            const std::vector<double> &lambda_grid,
                            const std::vector<double> &r_grid);

// Tightest (a1, a2) for given exponents on a scan grid.
ScalingCertificate fit_certificate(const BernsteinSpec &b, double delta1,
                                   double delta2,
                                   const std::vector<double> &lambda_grid,
                                   const std::vector<double> &r_grid);

struct BernsteinReport {
    int alternating_signs_up_to = 0;
    double worst_violation = 0.0;
};

// Finite-difference certificate of (-1)^n phi^(n) <= 0 for 1 <= n <= n_max
// on a log lambda grid. Not a proof; see module notes.
BernsteinReport check_bernstein(const BernsteinSpec &b, int n_max,
                                const std::vector<double> &lambda_grid);

// Bisection inverse of a strictly increasing evaluable, |f(r)-y| <= 1e-12*y.
double invert(const std::function<double(double)> &f, double y, double lo_hint = 1e-30,
              double hi_hint = 1e30);

// integral_r^inf ds/(s*varphi(s)): adaptive quadrature to R_max plus a
// power-law tail estimate from the local log-slope at R_max.
// R_max = 0 selects it automatically so the tail remainder is < 1e-10 of
// the value.
double tail_integral(const Modulus &varphi, double r, double R_max = 0.0);

std::vector<double> log_spaced(double lo, double hi, int count);

} // namespace nlh
