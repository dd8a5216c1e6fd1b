#include <cmath>
#include <complex>

#include "doctest.h"
#include "qs/qcore.hpp"
#include "qs/rng.hpp"
#include "test_util.hpp"

using qs::cplx;
using qs::QContext;
using qt::rel;

TEST_CASE("qpoch basic values") {
    QContext ctx(0.5);
    const cplx x(0.3, 0.2);
    CHECK(rel(qs::qpoch(x, 0, ctx), 1.0) < 1e-15);
    CHECK(rel(qs::qpoch(x, -1, ctx), 1.0 / (1.0 - x / ctx.q())) < 1e-14);
}

TEST_CASE("qpoch finite product matches reverse-order oracle") {
    QContext ctx(0.5);
    const cplx x = 0.25;
    // Oracle: multiply the 8 factors in decreasing m, the opposite of the
    // library's accumulation order.
    cplx oracle = 1.0;
    for (int m = 7; m >= 0; --m) oracle *= 1.0 - x * std::pow(ctx.q(), static_cast<double>(m));
    CHECK(rel(qs::qpoch(x, 8, ctx), oracle) < 1e-14);
}

TEST_CASE("qpoch_inf basic values and index shift") {
    QContext ctx(0.5);
    CHECK(rel(qs::qpoch_inf(0.0, ctx), 1.0) < 1e-15);
    const cplx x(0.3, 0.1);
    CHECK(rel(qs::qpoch_inf(x, ctx), (1.0 - x) * qs::qpoch_inf(x * ctx.q(), ctx)) < ctx.eps());
}

TEST_CASE("qpoch_inf matches log-space oracle") {
    QContext ctx(0.5);
    const cplx x = 0.25;
    cplx logsum = 0.0;
    for (int m = 0; m < 64; ++m)
        logsum += std::log(1.0 - x * std::pow(ctx.q(), static_cast<double>(m)));
    CHECK(rel(qs::qpoch_inf(x, ctx), std::exp(logsum)) < 1e-12);
}

TEST_CASE("qpoch_multi") {
    QContext ctx(0.5);
    CHECK(rel(qs::qpoch_multi({}, 5, ctx), 1.0) < 1e-15);
    const cplx x(0.4, -0.1);
    CHECK(rel(qs::qpoch_multi({x}, 7, ctx), qs::qpoch(x, 7, ctx)) < 1e-15);
    CHECK(rel(qs::qpoch_multi({0.2, 0.3}, 5, ctx),
              qs::qpoch(0.2, 5, ctx) * qs::qpoch(0.3, 5, ctx)) < 1e-14);
}

TEST_CASE("theta special values and functional equations") {
    QContext ctx(0.5);
    CHECK(std::abs(qs::theta(1.0, ctx)) < 1e-12);
    const cplx x(0.4, -0.2);
    CHECK(rel(qs::theta(ctx.q() / x, ctx), qs::theta(x, ctx)) < ctx.eps() * 10);
    const cplx x2 = 0.7;
    CHECK(rel(qs::theta(ctx.q() * x2, ctx), -qs::theta(x2, ctx) / x2) < ctx.eps() * 10);
}

TEST_CASE("qpoch recursion at random points") {
    for (cplx q : {cplx(0.5, 0.0), cplx(0.3, 0.2)}) {
        QContext ctx(q);
        qs::SplitMix64 rng(0x71636f72ULL);
        for (int i = 0; i < 50; ++i) {
            const cplx x = rng.log_annulus(0.05, 2.0);
            const long n = static_cast<long>(rng.uniform(-20.0, 21.0));
            const cplx lhs = qs::qpoch(x, n + 1, ctx);
            const cplx rhs = (1.0 - x * std::pow(q, cplx(static_cast<double>(n)))) *
                             qs::qpoch(x, n, ctx);
            CHECK(std::abs(lhs - rhs) < ctx.eps() * std::abs(lhs) + ctx.eps());
        }
    }
}

TEST_CASE("qpoch splice with the infinite product") {
    QContext ctx(0.5);
    qs::SplitMix64 rng(0x73706c69ULL);
    int done = 0;
    while (done < 30) {
        const cplx x = rng.log_annulus(0.05, 2.0);
        const long n = static_cast<long>(rng.uniform(-10.0, 11.0));
        // Keep x off the pole lattice of negative-index factors.
        if (qt::theta_clearance(x, ctx) < 5e-2) continue;
        const cplx lhs = qs::qpoch(x, n, ctx) *
                         qs::qpoch_inf(x * std::pow(ctx.q(), cplx(static_cast<double>(n))), ctx);
        const cplx rhs = qs::qpoch_inf(x, ctx);
        CHECK(rel(lhs, rhs) < 4.0 * ctx.eps());
        ++done;
    }
}

TEST_CASE("theta squared-argument identity") {
    QContext ctx(0.5);
    qs::SplitMix64 rng(0x74737172ULL);
    const cplx qinf = qs::qpoch_inf(ctx.q(), ctx);
    int done = 0;
    while (done < 20) {
        const cplx y = rng.log_annulus(0.5, 2.0);
        if (qt::theta_clearance(y * y, ctx) < 3e-2) continue;
        const cplx lhs = qs::theta(y * y, ctx);
        const cplx rhs = qs::theta(y, ctx) * qs::theta(-y, ctx) * qs::theta(y * ctx.sqrt_q(), ctx) *
                         qs::theta(-y * ctx.sqrt_q(), ctx) / (qinf * qinf * qinf);
        CHECK(rel(lhs, rhs) < 1e-10);
        ++done;
    }
}

TEST_CASE("theta quasi-periodicity at random points") {
    QContext ctx(0.5);
    qs::SplitMix64 rng(0x74687131ULL);
    int done = 0;
    while (done < 20) {
        const cplx rho = rng.log_annulus(0.5, 1.5);
        const cplx x = rng.log_annulus(0.5, 1.5);
        if (qt::theta_clearance(x / rho, ctx) < 5e-2) continue;
        const cplx tx = qs::theta(x / rho, ctx);
        const cplx txq = qs::theta(ctx.q() * x / rho, ctx);
        CHECK(std::abs(txq + (rho / x) * tx) <
              ctx.eps() * std::abs(tx) * (std::abs(rho / x) + 1.0) * 10 + 1e-300);
        ++done;
    }
}

TEST_CASE("QContext rejects q outside the supported band") {
    CHECK_THROWS_AS(QContext(cplx(0.95, 0.0)), qs::DomainError);
    CHECK_THROWS_AS(QContext(cplx(1e-7, 0.0)), qs::DomainError);
    CHECK_THROWS_AS(QContext(cplx(0.5, 0.0), 1e-2), qs::DomainError);
}
