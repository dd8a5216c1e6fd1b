#include <cmath>
#include <complex>

#include "doctest.h"
#include "qs/elliptic.hpp"
#include "qs/qcore.hpp"
#include "qs/rng.hpp"
#include "test_util.hpp"

using qs::cplx;
using qs::QContext;
using qt::rel;
using qt::rel_sym;

TEST_CASE("inversion constants") {
    QContext ctx(0.5);
    const auto c = qs::InversionConstants::make(ctx);
    CHECK(rel(c.k1 * c.k2, 1.0) < 1e-12);
    const cplx sq = ctx.sqrt_q();
    CHECK(rel(c.norm, qs::theta(sq, ctx) * qs::theta(-sq, ctx)) < 1e-12);
    // norm^2 consistency with the squared-argument theta identity at y = sqrt(q):
    // theta(q) = 0 so the identity is checked through the explicit product.
    CHECK(rel(c.norm * c.norm,
              qs::theta(sq, ctx) * qs::theta(sq, ctx) * qs::theta(-sq, ctx) *
                  qs::theta(-sq, ctx)) < 1e-11);
}

TEST_CASE("inversion kernel") {
    QContext ctx(0.5);
    const auto c = qs::InversionConstants::make(ctx);
    // Leading behavior sqrt(u) * kernel(u) -> 1 as u -> 0+.  The first
    // correction is (k1 + k2) u / 2, and k2 is large, so u must be tiny.
    const cplx u0 = 1e-13;
    CHECK(rel(std::sqrt(u0) * qs::inversion_kernel(u0, c), 1.0) < 1e-7);
    // Swapping k1 and k2 exchanges the two linear factors: identical value.
    // u is kept off the real axis: for real u > 1/k2 the radicand is negative
    // real, exactly on the square-root branch cut.
    qs::InversionConstants swapped = c;
    std::swap(swapped.k1, swapped.k2);
    const cplx u(0.1, 0.02);
    CHECK(rel(qs::inversion_kernel(u, swapped), qs::inversion_kernel(u, c)) < 1e-14);
    // Spot value against the expanded cubic under the root.
    const cplx cubic = u * (1.0 - c.k1 * u) * (1.0 - c.k2 * u);
    const cplx expanded = u - (c.k1 + c.k2) * u * u + c.k1 * c.k2 * u * u * u;
    CHECK(rel(cubic, expanded) < 1e-13);
    CHECK(rel(qs::inversion_kernel(u, c), 1.0 / std::sqrt(expanded)) < 1e-12);
}

TEST_CASE("theta_quotient") {
    QContext ctx(0.5);
    CHECK(std::abs(qs::theta_quotient(ctx.q(), ctx)) < 1e-12);
    const cplx x(0.6, 0.2);
    CHECK(rel(qs::theta_quotient(ctx.q() / x, ctx), qs::theta_quotient(x, ctx)) < 1e-11);
    CHECK(rel(qs::theta_quotient(ctx.q() * x, ctx), qs::theta_quotient(x, ctx)) < 1e-11);
}

TEST_CASE("jacobi_inverse recovers the documented solution set") {
    QContext ctx(0.5);
    // Purely imaginary x0 gives |y| = 1 (theta(x0) and theta(-x0) are
    // conjugate for real q); real x0 would give |y| ~ k1, below the guard.
    const cplx x0(0.0, 0.75);
    const cplx y = qs::theta_quotient(x0, ctx);
    const cplx x = qs::jacobi_inverse(y, ctx);
    // x must equal q^n x0 or q^n / x0 for some integer n.
    bool matched = false;
    for (int n = -4; n <= 4; ++n) {
        const cplx qn = std::pow(ctx.q(), cplx(static_cast<double>(n)));
        if (rel(x, qn * x0) < 1e-8 || rel(x, qn / x0) < 1e-8) matched = true;
    }
    CHECK(matched);
}

TEST_CASE("jacobi_inverse solves the defining equation at a fixed point") {
    QContext ctx(0.5);
    // y = 1 itself is inadmissible: the integration segment to sqrt(1) runs
    // along the real axis, straight through the branch point at 1/sqrt(k2).
    const cplx y(1.0, 0.5);
    const cplx x = qs::jacobi_inverse(y, ctx);
    CHECK(rel(qs::theta_quotient(x, ctx), y) < 1e-8);
}

TEST_CASE("round trip theta_quotient after jacobi_inverse") {
    QContext ctx(0.5);
    const auto c = qs::InversionConstants::make(ctx);
    qs::SplitMix64 rng(0x656c6c69ULL);
    int done = 0;
    while (done < 20) {
        const cplx y = rng.log_annulus(0.1, 3.0);
        if (std::abs(y - 1.0 / c.k1) < 1e-1 || std::abs(y - 1.0 / c.k2) < 1e-1) continue;
        cplx x;
        try {
            x = qs::jacobi_inverse(y, ctx);
        } catch (const qs::Error&) {
            continue;  // segment passed too close to a branch point
        }
        CHECK(rel(qs::theta_quotient(x, ctx), y) < 1e-8);
        ++done;
    }
}

TEST_CASE("solution-set ambiguity closure") {
    QContext ctx(0.5);
    const cplx x0 = qs::jacobi_inverse(cplx(0.8, 0.3), ctx);
    const cplx y = qs::theta_quotient(x0, ctx);
    for (int n = -1; n <= 1; ++n) {
        const cplx qn = std::pow(ctx.q(), cplx(static_cast<double>(n)));
        CHECK(rel(qs::theta_quotient(qn * x0, ctx), y) < 1e-9);
        CHECK(rel(qs::theta_quotient(qn / x0, ctx), y) < 1e-9);
    }
}
