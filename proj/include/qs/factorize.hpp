#pragma once

#include <vector>

#include "qs/series.hpp"

namespace qs {

// An equivalence class of factorization zeros: a canonical complex
// representative modulo multiplication by integer powers of q.
struct RhoClass {
    cplx rep;

    // Rescales z by powers of q so that |q| < |z * anchor| <= 1.
    static RhoClass canonical(cplx z, cplx anchor, const QContext& ctx);

    // Classes are equal when the ratio of representatives is within tol of an
    // integer power of q.
    bool same_class(const RhoClass& other, const QContext& ctx, double tol = 1e-8) const;
};

struct FactorizationResult {
    cplx A;
    std::vector<RhoClass> rhos;
    double residual;
    cplx x;
    long q_exponent;  // exponent found in the product relation before rescaling
};

// The r zeros of y -> psi_star(spec, x, y) in the fundamental annulus
// |q| < |y| <= 1, as classes. Winding-number count over the annulus boundary,
// then multi-seed Newton, then dedup modulo q^Z. Representatives are rescaled
// so that prod_j rep_j * a_1...a_r * x = 1 exactly up to tolerance.
std::vector<RhoClass> find_rhos(const SeriesSpec& spec, cplx x, const QContext& ctx,
                                long* q_exponent_out = nullptr);

// A = psi_star(spec, x, y0) / prod_j theta(y0 / rep_j), probe-checked.
cplx extract_A(const SeriesSpec& spec, cplx x, const std::vector<RhoClass>& rhos,
               const QContext& ctx);

// Full theta-product factorization of y -> psi_star(spec, x, y), with a
// reconstruction residual checked at independent probe points.
FactorizationResult factorize(const SeriesSpec& spec, cplx x, const QContext& ctx);

// Analytic continuation of a zero of y -> psi_star(x, y) along the straight
// log-space path from x_from to x_to (predictor: previous value; corrector:
// Newton). Throws BranchJump near a branch point.
cplx track_rho(const SeriesSpec& spec2, cplx x_from, cplx x_to, cplx rho_start,
               const QContext& ctx);

// Coherent branch values of rho at the given targets, tracked from the base
// point (base_x, rho_base).
std::vector<cplx> track_rho_many(const SeriesSpec& spec2, cplx base_x, cplx rho_base,
                                 const std::vector<cplx>& targets, const QContext& ctx);

// A(x) for the r = 2 paired factorization A theta(y/rho) theta(a1 a2 x y rho),
// given a branch value rho_x of rho at x.
cplx extract_A2(const SeriesSpec& spec2, cplx x, cplx rho_x, const QContext& ctx);

// Residual of the A^2 formula of the 2psi2 factorization theorem, with branches
// of rho at x/q, x, qx tracked from a common base.
double verify_A_rho_relation(const SeriesSpec& spec2, cplx x, const QContext& ctx);

// Residuals of the three A-ratio relations obtained by setting y = rho(x),
// rho(qx), rho(q^2 x) in the three-term equation; returns the worst.
double verify_A_ratio_relations(const SeriesSpec& spec2, cplx x, const QContext& ctx);

// Residual of the two-sided functional equation satisfied by rho.
double verify_rho_functional_equation(const SeriesSpec& spec2, cplx x, const QContext& ctx);

// rho(x) by the elliptic integral formula; must match (either of) the
// root-found classes modulo the rho <-> 1/(a1 a2 x rho) swap.
RhoClass rho_via_integral(const SeriesSpec& spec2, cplx x, const QContext& ctx);

// Relative residual of psi2*(x, y) = psi2*(x, q/(a1 a2 x y)).
double verify_bailey_symmetry(const SeriesSpec& spec2, cplx x, cplx y, const QContext& ctx);

}  // namespace qs
