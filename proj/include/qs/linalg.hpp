#pragma once

#include <vector>

#include "qs/qcore.hpp"

namespace qs {

// Determinant of a small dense complex matrix (row-major, n x n) by Gaussian
// elimination with partial pivoting.
cplx det_small(std::vector<std::vector<cplx>> m);

// Permanent of the entrywise absolute values of a small n x n matrix. This is
// the natural magnitude scale of the determinant before cancellation, so
// |det| / perm_abs measures how ill-conditioned the determinant is and
// residuals of determinant identities should be normalized by perm_abs rather
// than by the (possibly tiny) determinant itself.
double perm_abs(const std::vector<std::vector<cplx>>& m);

}  // namespace qs
