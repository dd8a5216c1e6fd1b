#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qs/qcore.hpp"
#include "qs/rng.hpp"
#include "qs/series.hpp"
#include "qs/thetaspaces.hpp"
#include "test_util.hpp"

using qs::cplx;
using qs::QContext;
using qs::SampledFunction;
using qs::SeriesSpec;
using qt::rel;
using qt::rel_sym;

namespace {

std::vector<cplx> sample_points(qs::SplitMix64& rng, int n, const QContext& ctx) {
    std::vector<cplx> xs;
    while (static_cast<int>(xs.size()) < n) {
        const cplx x = rng.log_annulus(0.5, 1.8);
        bool ok = qt::theta_clearance(x, ctx) > 1e-2;
        for (const cplx& other : xs)
            if (qt::theta_clearance(x / other, ctx) < 1e-2) ok = false;
        if (ok) xs.push_back(x);
    }
    return xs;
}

// Smallest-over-largest singular value of the matrix [fs_i(xs_j)], rows
// normalized to unit sup; certifies (in)dependence of the function list.
double sv_ratio(const std::vector<SampledFunction>& fs, const std::vector<cplx>& xs) {
    const int rows = static_cast<int>(fs.size());
    const int cols = static_cast<int>(xs.size());
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        double biggest = 0.0;
        for (int j = 0; j < cols; ++j) {
            m(i, j) = fs[i](xs[j]);
            biggest = std::max(biggest, std::abs(m(i, j)));
        }
        m.row(i) /= biggest;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) / sv(0);
}

}  // namespace

TEST_CASE("theta_space_residual examples") {
    QContext ctx(0.5);
    qs::SplitMix64 rng(0x74737072ULL);
    const auto xs = sample_points(rng, 10, ctx);

    const cplx rho = 0.8;
    SampledFunction f = [&](cplx x) { return qs::theta(x / rho, ctx); };
    CHECK(qs::theta_space_residual(f, {1, 1.0 / rho}, xs, ctx) < 1e-10);

    const SeriesSpec sp = qt::spec2();
    const cplx x0 = 0.45;
    SampledFunction g = [&](cplx y) { return qs::psi_star(sp, x0, y, ctx); };
    CHECK(qs::theta_space_residual(g, {2, sp.prod_a() * x0}, xs, ctx) < 1e-9);

    SampledFunction one = [](cplx) { return cplx(1.0); };
    CHECK(qs::theta_space_residual(one, {0, 1.0}, xs, ctx) == doctest::Approx(0.0));
}

TEST_CASE("vartheta_basis cardinal property and n=1 formula") {
    QContext ctx(0.5);
    qs::SplitMix64 rng(0x76617274ULL);
    const auto zs = sample_points(rng, 3, ctx);
    const cplx c = 1.3;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const cplx v = qs::vartheta_basis(j, zs, c, zs[k], ctx);
            CHECK(std::abs(v - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
    // n = 1: the basis is a plain theta quotient.
    const cplx z1 = 0.7, x = 0.9, c2 = 2.0;
    const cplx want = qs::theta(c2 * x, ctx) / qs::theta(c2 * z1, ctx);
    CHECK(rel(qs::vartheta_basis(0, {z1}, c2, x, ctx), want) < 1e-12);
}

TEST_CASE("slater_general_check r=2") {
    QContext ctx(0.5);
    const SeriesSpec sp = qt::spec2();
    const std::vector<cplx> zs = {0.7, 1.1};
    CHECK(qs::slater_general_check(sp, 0.4, 0.9, zs, ctx) < 1e-9);
    // Cardinal collapse at y = z_1.
    CHECK(qs::slater_general_check(sp, 0.4, zs[0], zs, ctx) < 1e-12);
    // r = 1 instance.
    const SeriesSpec sp1({2.0}, {0.3});
    CHECK(qs::slater_general_check(sp1, 0.5, 0.9, {0.8}, ctx) < 1e-10);
}

TEST_CASE("omega_basis cardinal property and reflection symmetry") {
    QContext ctx(0.5);
    const std::vector<cplx> zs = {cplx(0.7, 0.2), cplx(1.1, -0.3)};
    const cplx c = 1.4;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            const cplx v = qs::omega_basis(j, zs, c, zs[k], ctx);
            CHECK(std::abs(v - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
    const cplx x(0.9, 0.4);
    CHECK(rel_sym(qs::omega_basis(0, zs, c, ctx.q() / (c * x), ctx),
                  qs::omega_basis(0, zs, c, x, ctx)) < 1e-10);
}

TEST_CASE("slater_vwp_check") {
    QContext ctx(0.5);
    // r = 8, two nodes.
    CHECK(qs::slater_vwp_check(qs::WSpec(8, {1.4, 1.5, 1.6, 1.7, 1.8, 1.9}), 0.9, {0.8, 1.2},
                               ctx) < 1e-8);
    // r = 5, one node.
    CHECK(qs::slater_vwp_check(qs::WSpec(5, {1.6, 1.8, 2.0}), 0.9, {0.8}, ctx) < 1e-8);
    // r = 6 reduces to y-constancy of W*/theta(y^2).
    CHECK(qs::slater_vwp_check(qs::WSpec(6, {1.5, 1.7, 1.9, 2.1}), 0.9, {1.15}, ctx) < 1e-9);
}

TEST_CASE("delta_n") {
    QContext ctx(0.5);
    CHECK(rel(qs::delta_n({cplx(0.8)}, ctx), 1.0) < 1e-15);
    CHECK(std::abs(qs::delta_n({cplx(0.9), cplx(0.9)}, ctx)) < 1e-12);
    // Two orderings related by theta(1/u) = -(1/u) theta(u) quasi-periodicity.
    const cplx x1 = 0.7, x2 = 1.1;
    const cplx d12 = qs::delta_n({x1, x2}, ctx);
    const cplx d21 = qs::delta_n({x2, x1}, ctx);
    CHECK(rel(d12, x2 * qs::theta(x1 / x2, ctx)) < 1e-12);
    CHECK(rel(d21, x1 * qs::theta(x2 / x1, ctx)) < 1e-12);
}

TEST_CASE("theta_det_ratio examples") {
    QContext ctx(0.5);
    // n = 1 with f = theta(c x): the ratio is exactly 1, so two node lists
    // agree trivially.
    {
        const cplx c = 1.2;
        SampledFunction f = [&](cplx x) { return qs::theta(c * x, ctx); };
        CHECK(qs::theta_det_ratio({f}, {{cplx(0.8)}, {cplx(1.15, 0.2)}}, c, ctx) < 1e-12);
    }
    // n = 2 with the psi_star pair (the h_2 step).
    {
        const SeriesSpec sp = qt::spec2();
        const cplx x0 = 0.45;
        const cplx c = sp.prod_a() * x0;
        SampledFunction f1 = [&](cplx y) { return qs::psi_star(sp, x0, y, ctx); };
        SampledFunction f2 = [&](cplx y) { return y * qs::psi_star(sp, ctx.q() * x0, y, ctx); };
        CHECK(qs::theta_det_ratio({f1, f2},
                                  {{cplx(0.8, 0.1), cplx(1.2, -0.2)},
                                   {cplx(0.7, -0.35), cplx(1.05, 0.45)}},
                                  c, ctx) < 1e-8);
    }
    // n = 2 with explicit theta products.
    {
        const cplx c = 2.0, alpha = 0.8, beta = 1.3;
        SampledFunction f1 = [&](cplx y) {
            return qs::theta(alpha * y, ctx) * qs::theta(c * y / alpha, ctx);
        };
        SampledFunction f2 = [&](cplx y) {
            return qs::theta(beta * y, ctx) * qs::theta(c * y / beta, ctx);
        };
        CHECK(qs::theta_det_ratio({f1, f2},
                                  {{cplx(0.85, 0.2), cplx(1.3, -0.1)},
                                   {cplx(0.65, -0.3), cplx(1.1, 0.5)}},
                                  c, ctx) < 1e-10);
    }
}

TEST_CASE("Theta_n dimension as a conditioning gap") {
    QContext ctx(0.5);
    qs::SplitMix64 rng(0x64696d73ULL);

    for (int n : {2, 3}) {
        const cplx c = 1.3;
        // n + 1 members of Theta_n(c): theta products with n factors.
        std::vector<SampledFunction> fs;
        for (int i = 0; i <= n; ++i) {
            std::vector<cplx> alphas;
            for (int k = 0; k + 1 < n; ++k) alphas.push_back(rng.log_annulus(0.6, 1.4));
            fs.push_back([alphas, c, n, &ctx](cplx x) {
                cplx v = 1.0, pa = 1.0;
                for (const cplx& al : alphas) {
                    v *= qs::theta(x / al, ctx);
                    pa *= al;
                }
                return v * qs::theta(c * pa * x, ctx);
            });
        }
        const auto xs = sample_points(rng, 12, ctx);
        // Over-complete: n + 1 members are numerically rank deficient ...
        CHECK(sv_ratio(fs, xs) < 1e-8);
        // ... while n members are well conditioned.
        fs.pop_back();
        CHECK(sv_ratio(fs, xs) > 1e-6);
    }
}

TEST_CASE("Theta_2 reflection and Omega sign lemma") {
    QContext ctx(0.5);
    const cplx c = 1.4, alpha = 0.85;
    // f in Theta_2(c) built as theta(x/alpha) theta(c alpha x) is symmetric
    // under x -> q/(cx).
    auto f = [&](cplx x) { return qs::theta(x / alpha, ctx) * qs::theta(c * alpha * x, ctx); };
    const cplx x(0.9, 0.3);
    CHECK(rel_sym(f(ctx.q() / (c * x)), f(x)) < 1e-10);
    // s(x) = x theta(c x^2) flips sign under the same reflection.
    auto s = [&](cplx u) { return u * qs::theta(c * u * u, ctx); };
    CHECK(rel_sym(s(ctx.q() / (c * x)), -s(x)) < 1e-10);
}

TEST_CASE("omega expansion of a reflected product") {
    QContext ctx(0.5);
    const cplx c = 1.3, alpha = 0.9;
    const std::vector<cplx> zs = {cplx(0.75, 0.25), cplx(1.2, -0.35)};
    auto g = [&](cplx x) { return qs::theta(x / alpha, ctx); };
    auto f = [&](cplx x) { return g(x) * g(ctx.q() / (c * x)); };
    const cplx xf(1.05, 0.4);
    cplx approx = 0.0;
    for (int j = 0; j < 2; ++j) approx += f(zs[j]) * qs::omega_basis(j, zs, c, xf, ctx);
    CHECK(rel_sym(f(xf), approx) < 1e-9);
}

TEST_CASE("psi_star product omega expansion (r = 2)") {
    QContext ctx(0.5);
    const SeriesSpec sp = qt::spec2();
    const cplx x0 = 0.45;
    const cplx c = sp.prod_a() * x0;
    const std::vector<cplx> zs = {cplx(0.8, 0.15), cplx(1.1, -0.3), cplx(0.7, -0.5)};
    auto f = [&](cplx y) {
        return qs::psi_star(sp, x0, y, ctx) * qs::psi_star(sp, x0, ctx.q() / (c * y), ctx);
    };
    const cplx yf(0.95, 0.35);
    cplx approx = 0.0;
    double scale = 0.0;
    for (int j = 0; j < 3; ++j) {
        const cplx t = f(zs[j]) * qs::omega_basis(j, zs, c, yf, ctx);
        approx += t;
        scale += std::abs(t);
    }
    CHECK(std::abs(f(yf) - approx) / (scale + std::abs(f(yf))) < 1e-8);
}
