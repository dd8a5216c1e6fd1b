#pragma once

#include "qs/thetaspaces.hpp"

namespace qs {

// Coefficients of x prod(1 - a_j y) - prod(1 - b_j y / q) = sum_j lambda_j(x) y^j.
struct LambdaCoeffs {
    std::vector<cplx> lambdas;  // lambdas[j] = lambda_j(x), j = 0..r
};

LambdaCoeffs lambda_coeffs(const SeriesSpec& spec, cplx x, const QContext& ctx);

// Normalized residual of the (r+1)-term linear relation
// sum_j y^j lambda_j(x) (x)_j / (B/(A x q^j))_j * psi_star(x q^j, y) = 0.
double psi_star_linear_relation_residual(const SeriesSpec& spec, cplx x, cplx y,
                                         const QContext& ctx);

// q-Wronskian of the two solutions theta(x/y) psi2*(x, y), theta(x/z) psi2*(x, z).
cplx wronskian2(const SeriesSpec& spec2, cplx x, cplx y, cplx z, const QContext& ctx);

// Its closed-form factorization (the r = 2 case of Gustafson's A_r identity).
cplx wronskian2_closed_form(const SeriesSpec& spec2, cplx x, cplx y, cplx z,
                            const QContext& ctx);

// |wronskian2 - closed form| normalized by the magnitudes of the two Wronskian
// terms and the closed form, so near-cancellation of the Wronskian does not
// inflate the relative residual.
double wronskian2_residual(const SeriesSpec& spec2, cplx x, cplx y, cplx z,
                           const QContext& ctx);

// det(y_i^{j-1} psi*(q^{j-1} x, y_i)) normalized by the theta Vandermonde and
// the explicit product; independent of x and the y_i. Supported for r <= 3.
// If scale_out is non-null it receives the pre-cancellation magnitude of the
// quotient (permanent of entry magnitudes over |denominator|), the right
// normalization for residuals of identities involving this determinant.
cplx gustafson_ratio(const SeriesSpec& spec, cplx x, const std::vector<cplx>& ys,
                     const QContext& ctx, double* scale_out = nullptr);

// The constant value of gustafson_ratio:
// (q)_inf^{-(r-1)(r-2)/2} prod_{i,j} (b_i / a_j)_inf.
cplx gustafson_ratio_value(const SeriesSpec& spec, const QContext& ctx);

// First-order q-difference relation of the q-Wronskian of n solutions of an
// n-term recurrence with coefficient functions cs[0..n]. Recurrence membership
// is checked first (GuardFailed on violation).
double qwronskian_step_check(const std::vector<SampledFunction>& fs,
                             const std::vector<SampledFunction>& cs, cplx x,
                             const QContext& ctx);

}  // namespace qs
