#pragma once

#include "qs/qcore.hpp"

namespace qs {

// Constants of the Jacobi inversion integral:
// k1 = theta(sqrt q)^2 / theta(-sqrt q)^2, k2 = 1/k1, norm = theta(sqrt q) theta(-sqrt q).
struct InversionConstants {
    cplx k1;
    cplx k2;
    cplx norm;

    static InversionConstants make(const QContext& ctx);
};

// The theta-quotient map y = theta(x)^2 / theta(-x)^2.
cplx theta_quotient(cplx x, const QContext& ctx);

// Principal-branch value of the integrand 1/sqrt(u (1 - k1 u)(1 - k2 u)).
cplx inversion_kernel(cplx u, const InversionConstants& consts);

// Integral of the kernel from 0 to y along the straight segment (after the
// u = s^2 substitution), on the branch continuous from the positive limit at 0.
cplx inversion_integral(cplx y, const InversionConstants& consts, const QContext& ctx);

// Inverse of the theta-quotient map: returns one solution x of
// theta(x)^2/theta(-x)^2 = y; the full solution set is {q^n x, q^n / x}.
cplx jacobi_inverse(cplx y, const QContext& ctx);

}  // namespace qs
