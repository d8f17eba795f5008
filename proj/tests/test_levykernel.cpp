#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlholder/levykernel.hpp"
#include "nlholder/quad.hpp"

using namespace nlh;

TEST_CASE("stable jump density matches the closed-form constant") {
    for (double alpha : {0.25, 0.5, 0.7}) {
        BernsteinSpec b = BernsteinSpec::stable(alpha);
        for (int d : {1, 2}) {
            double C = stable_constant(2.0 * alpha, d);
            for (double r : {0.05, 0.5, 2.0}) {
                double j = jump_density(b, r, d);
                double exact = C * std::pow(r, -d - 2.0 * alpha);
                CHECK(j == doctest::Approx(exact).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("stable constant ties to the fractional-Laplacian normalizer") {
    // C(beta,1) must equal 1 / int_R (1-cos t)|t|^{-1-beta} dt. Quadrature
    // over [0,T] plus the analytic tail: int_T^inf t^{-1-beta} = T^-beta/beta
    // minus the oscillatory remainder from two integrations by parts.
    for (double beta : {0.8, 1.0, 1.4}) {
        const double T = 400.0;
        auto f = [beta](double u) {
            double t = std::exp(u);
            return 2.0 * (1.0 - std::cos(t)) * std::pow(t, -beta); // * dt/t
        };
        double c = 0.0;
        for (double lo = std::log(1e-9); lo < std::log(T) - 1e-9;) {
            double hi = std::min(lo + std::log(10.0), std::log(T));
            c += adaptive_simpson(f, lo, hi, 1e-10);
            lo = hi;
        }
        double tail = std::pow(T, -beta) / beta;
        // I = int_T^inf cos(t) t^{-1-beta} dt by two integrations by parts
        double I = -std::sin(T) * std::pow(T, -1.0 - beta) +
                   (1.0 + beta) * std::cos(T) * std::pow(T, -2.0 - beta);
        c += 2.0 * (tail - I); // remainder O(T^{-3-beta})
        CHECK(stable_constant(beta, 1) ==
              doctest::Approx(1.0 / c).epsilon(1e-5));
        // textbook closed form pi / (Gamma(1+beta) sin(pi beta / 2))
        double closed = PI / (std::tgamma(1.0 + beta) *
                              std::sin(0.5 * PI * beta));
        CHECK(c == doctest::Approx(closed).epsilon(1e-5));
    }
}

TEST_CASE("stable scaling j(2r)/j(r)") {
    BernsteinSpec b = BernsteinSpec::stable(0.4);
    double r = 0.3;
    CHECK(jump_density(b, 2.0 * r, 1) / jump_density(b, r, 1) ==
          doctest::Approx(std::pow(2.0, -1.0 - 0.8)).epsilon(1e-7));
}

TEST_CASE("stable-log comparability j * r^d * varphi in [1/C0, C0]") {
    BernsteinSpec b = BernsteinSpec::stable_log(0.3, 0.4);
    double worst = 0.0;
    for (double r : log_spaced(std::pow(2.0, -10.0), 8.0, 40)) {
        double q = jump_density(b, r, 1) * r * b.varphi.eval(r);
        CHECK(q > 0.0);
        worst = std::max(worst, std::max(q, 1.0 / q));
    }
    CHECK(worst <= 10.0);
}

TEST_CASE("kernel_value") {
    LevyKernel k{BernsteinSpec::stable(0.5), 1,
                 KernelCoefficient::constant(1.0)};
    // varphi = Power(1): value = 1/(|h| * |h|)
    CHECK(k.kernel_value({0.0, 0.0}, {0.5, 0.0}) ==
          doctest::Approx(4.0).epsilon(1e-12));

    LevyKernel k2{BernsteinSpec::stable(0.5), 1,
                  KernelCoefficient::constant(1.75)};
    CHECK(k2.kernel_value({1.0, 0.0}, {0.5, 0.0}) ==
          doctest::Approx(1.75 * 4.0).epsilon(1e-12));

    CHECK_THROWS_AS(k.kernel_value({0.0, 0.0}, {0.0, 0.0}), guard_error);
}

TEST_CASE("verify_coefficient") {
    CoefficientReport c1 =
        verify_coefficient(KernelCoefficient::constant(2.0), 1, 2 * PI, 32, 24);
    CHECK(c1.bounds_ok);
    CHECK(c1.continuity_ok);
    CHECK(c1.symmetry_ok);
    CHECK(c1.worst_continuity == doctest::Approx(0.0));

    CoefficientReport c2 =
        verify_coefficient(KernelCoefficient::cosine_x(0.5), 1, 2 * PI, 64, 24);
    CHECK(c2.bounds_ok);
    CHECK(c2.continuity_ok); // Lipschitz with Lambda3 = 1/2
    CHECK(c2.symmetry_ok);
    CHECK(c2.worst_continuity <= 0.5 + 1e-12);
    CHECK(c2.worst_continuity > 0.3);

    KernelCoefficient jumpy = KernelCoefficient::constant(1.0);
    jumpy.a = [](const Point &x, const Point &) {
        return x[0] < 3.0 ? 1.0 : 1.5;
    };
    jumpy.lambda2 = 1.5;
    jumpy.lambda3 = 0.1;
    CoefficientReport c3 = verify_coefficient(jumpy, 1, 2 * PI, 64, 24);
    CHECK_FALSE(c3.continuity_ok);
}

TEST_CASE("Levy integrability") {
    for (auto b : {BernsteinSpec::stable(0.3), BernsteinSpec::stable(0.7),
                   BernsteinSpec::stable_log(0.3, 0.4)}) {
        LevyKernel k{b, 1, KernelCoefficient::constant(1.0)};
        double v = levy_integrability(k, {0.0, 0.0});
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
    // d=2 smoke
    LevyKernel k2{BernsteinSpec::stable(0.5), 2,
                  KernelCoefficient::constant(1.0)};
    CHECK(std::isfinite(levy_integrability(k2, {0.0, 0.0})));
}

TEST_CASE("unsupported family guard") {
    BernsteinSpec c = BernsteinSpec::custom(
        "opaque", [](double l) { return std::sqrt(l); });
    CHECK_THROWS_AS(jump_density(c, 1.0, 1), config_error);
}
