#pragma once

#include <utility>

#include "qs/series.hpp"

namespace qs {

// Closed-form right-hand sides of the classical summations; these serve as
// independent oracles for the series module.

// q-Gauss summation: returns {truncated unilateral sum, product side}.
std::pair<cplx, cplx> q_gauss(cplx a, cplx b, cplx x, const QContext& ctx);

// Product side of Ramanujan's 1psi1 summation.
cplx one_psi_one_rhs(cplx a, cplx b, cplx x, const QContext& ctx);

// Bailey's 6psi6 summation: returns {bilateral sum, product side}.
std::pair<cplx, cplx> six_psi_six(const std::vector<cplx>& a, cplx y, const QContext& ctx);

// Factorization of psi_star at x = 1:
// (b_1...b_r/a_1...a_r)_inf / (q)_inf^{r-1} * prod_j theta(a_j y).
cplx psi_star_x1(const SeriesSpec& spec, cplx y, const QContext& ctx);

}  // namespace qs
