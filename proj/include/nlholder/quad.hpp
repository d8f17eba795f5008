#pragma once

#include <cmath>
#include <functional>

namespace nlh {

// Adaptive Simpson on [a,b] with relative tolerance, recursion-depth capped.
// Classic Lyness refinement: accept when |S2 - S1| <= 15*tol.
namespace detail {
inline double simpson_step(const std::function<double(double)> &f, double a,
                           double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double s2 = left + right;
    if (depth <= 0 || std::abs(s2 - whole) <= 15.0 * tol)
        return s2 + (s2 - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

inline double adaptive_simpson(const std::function<double(double)> &f,
                               double a, double b, double rel_tol,
                               int max_depth = 40) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double scale = std::abs(whole) > 0 ? std::abs(whole) : 1.0;
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, rel_tol * scale,
                                max_depth);
}

} // namespace nlh
