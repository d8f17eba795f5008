#pragma once

#include <utility>
#include <vector>

#include "grid.hpp"
#include "levykernel.hpp"

namespace nlh {

enum class Compensator { None, Gradient };

// Singular-integral evaluation plan for a LevyKernel on a periodic grid.
// The compensator choice must match the upper index of varphi (guard band
// 0.02 around 1): None for M < 1, Gradient for M in (1, 2).
struct OperatorSpec {
    LevyKernel kernel;
    Compensator compensator = Compensator::None;
    double inner_cutoff_cells = 4.0; // h0 = cells * dx
    int shells_per_decade = 64;
    double osc_resolution = 0.8; // max xi_cap * h * dlog(h) per shell
    double xi_cap = 0.0;         // 0 = grid Nyquist
    int wrap_terms = 200;        // period images summed in the far field

    // Picks the compensator from estimate_indices(varphi); throws on the
    // 0.02 guard band around 1 and on M >= 2.
    static OperatorSpec make(LevyKernel k);
};

// Shared quadrature nodes for one (spec, grid) pair: inner Taylor moments,
// oscillation-adaptive log shells on [h0, 4L], and the period-wrapped far
// weights on the s-grid for |h| > 4L.
struct QuadratureRule {
    int n = 0;
    double period = 0.0;
    double xi_cap = 0.0;
    double h0 = 0.0;
    double h_inner = 0.0; // representative |h| for inner coefficient evals
    std::vector<double> shell_h;  // shell midpoints (log scale)
    std::vector<double> shell_dv; // shell log widths
    std::vector<double> shell_k0; // 1/varphi(h) at midpoints
    std::vector<double> far_w;    // wrapped kernel weights, one per s_j
    double far_start = 0.0;       // = 4L; far images are at s_j + m L, m>=4
    // inner moments in_m = int_0^h0 h^{m-1}/varphi(h) dh
    double in1 = 0.0, in2 = 0.0, in3 = 0.0, in4 = 0.0;
};

QuadratureRule make_rule(const OperatorSpec &spec, int n, double period);

// Frozen (translation-invariant) operator: the rule plus the discrete
// Fourier multiplier M with F(L0 u) = M * F(u), assembled from the same
// nodes every direct apply uses.
struct FrozenOperator {
    QuadratureRule rule;
    std::vector<cplx> multiplier;
};

FrozenOperator freeze_quadrature(const OperatorSpec &spec, const Point &x0,
                                 int n, double period);

GridFunction apply_frozen(const FrozenOperator &op, const GridFunction &u);

// Constant-coefficient apply at frozen center x0.
GridFunction apply_L0(const OperatorSpec &spec, const Point &x0,
                      const GridFunction &u);

// Variable-coefficient apply. Separable coefficients (a = x_factor *
// h_factor) reuse the frozen multiplier; general coefficients take the
// per-shell path. d=1 only.
GridFunction apply_L(const OperatorSpec &spec, const GridFunction &u);

// Frozen operator for the h_factor of a separable coefficient; reusable
// across a corpus on the same grid.
FrozenOperator separable_h_operator(const OperatorSpec &spec, int n,
                                    double period);

// apply_L via a precomputed h-part: x_factor(x) * (h_op u)(x).
GridFunction apply_separable(const OperatorSpec &spec,
                             const FrozenOperator &h_op,
                             const GridFunction &u);

// Splits spec into the frozen spec at x0 and the difference spec with
// b(x,h) = a(x,h) - a(x0,h).
std::pair<OperatorSpec, OperatorSpec> freeze(const OperatorSpec &spec,
                                             const Point &x0);

// First-difference operator with the (sign-indefinite) difference
// coefficient; for h-symmetric b this is apply_L on the b-spec.
GridFunction apply_B(const OperatorSpec &b_spec, const GridFunction &v);

// Smooth radial cutoff: 1 on B(x0, r), 0 off B(x0, 2r), bump-primitive
// transition, periodic distance.
struct Cutoff {
    double r = 0.0;
    Point x0{0.0, 0.0};
    GridFunction values;
};

Cutoff make_cutoff(int dim, int n, double period, double r, const Point &x0);

// H(x) = int (u(x+h)-u(x)) (eta(x+h)-eta(x)) a(x,h)/(|h| varphi(|h|)) dh
// on the same nodes as apply_L, so the product rule
// L(u eta) = eta L u + u L eta + H holds at node level.
GridFunction apply_H(const OperatorSpec &spec, const GridFunction &u,
                     const Cutoff &eta, const QuadratureRule &rule);

struct AuxReport {
    double lhs = 0.0;   // int Psi(|h| ^ r)/(|h|^d varphi(|h|)) dh
    double bound = 0.0; // Psi(r)/varphi(r)
    double ratio = 0.0; // lhs / bound
};

// Requires M_varphi < m_Psi (indices at depth 20).
AuxReport aux_integral(const Modulus &Psi, const Modulus &varphi, double r,
                       int dim);

} // namespace nlh
