#include "qs/thetaspaces.hpp"

#include <cmath>

#include "qs/linalg.hpp"

namespace qs {

double theta_space_residual(const SampledFunction& f, const ThetaSpaceTag& tag,
                            const std::vector<cplx>& xs, const QContext& ctx) {
    if (tag.c == 0.0) throw DomainError("theta_space_residual: c must be non-zero");
    const double sign = (tag.n % 2 == 0) ? 1.0 : -1.0;
    double worst = 0.0;
    for (const cplx& x : xs) {
        if (x == 0.0) throw DomainError("theta_space_residual: x must be non-zero");
        const cplx fx = f(x);
        const cplx fqx = f(ctx.q() * x);
        const cplx xn = std::pow(x, static_cast<double>(tag.n));
        const double res = std::abs(fqx * tag.c * xn - sign * fx) /
                           (std::abs(fx) + std::abs(fqx) + ctx.eps());
        if (res > worst) worst = res;
    }
    return worst;
}

cplx vartheta_basis(int j, const std::vector<cplx>& zs, cplx c, cplx x, const QContext& ctx) {
    const int n = static_cast<int>(zs.size());
    if (j < 0 || j >= n) throw DomainError("vartheta_basis: node index out of range");
    cplx pz = 1.0;
    for (const cplx& z : zs) pz *= z;

    const cplx den0 = theta(c * pz, ctx);
    if (std::abs(den0) < 1e-8) throw DegenerateNodes("vartheta_basis: theta(c z_1...z_n) degenerate");
    cplx v = theta(c * pz * x / zs[j], ctx) / den0;
    for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const cplx den = theta(zs[j] / zs[k], ctx);
        if (std::abs(den) < 1e-8) throw DegenerateNodes("vartheta_basis: theta(z_j/z_k) degenerate");
        v *= theta(x / zs[k], ctx) / den;
    }
    return v;
}

double slater_general_check(const SeriesSpec& spec, cplx x, cplx y,
                            const std::vector<cplx>& zs, const QContext& ctx) {
    if (static_cast<int>(zs.size()) != spec.r)
        throw DomainError("slater_general_check: expected r nodes");
    const cplx c = spec.prod_a() * x;
    const cplx lhs = psi_star(spec, x, y, ctx);
    cplx rhs = 0.0;
    double scale = std::abs(lhs);
    for (int j = 0; j < spec.r; ++j) {
        const cplx term = psi_star(spec, x, zs[j], ctx) * vartheta_basis(j, zs, c, y, ctx);
        rhs += term;
        scale += std::abs(term);
    }
    return std::abs(lhs - rhs) / (scale + ctx.eps());
}

cplx omega_basis(int j, const std::vector<cplx>& zs, cplx c, cplx x, const QContext& ctx) {
    const int m = static_cast<int>(zs.size());
    if (j < 0 || j >= m) throw DomainError("omega_basis: node index out of range");
    cplx v = 1.0;
    for (int k = 0; k < m; ++k) {
        if (k == j) continue;
        const cplx den = theta(zs[j] / zs[k], ctx) * theta(c * zs[j] * zs[k], ctx);
        if (std::abs(den) < 1e-8) throw DegenerateNodes("omega_basis: degenerate node pair");
        v *= theta(x / zs[k], ctx) * theta(c * zs[k] * x, ctx) / den;
    }
    return v;
}

double slater_vwp_check(const WSpec& wspec, cplx y, const std::vector<cplx>& zs,
                        const QContext& ctx) {
    const int r = wspec.r;
    if (r < 5) throw DomainError("slater_vwp_check: requires r >= 5");
    const bool even = (r % 2 == 0);
    const int nodes = even ? (r - 6) / 2 + 1 : (r - 5) / 2 + 1;
    if (static_cast<int>(zs.size()) != nodes)
        throw DomainError("slater_vwp_check: wrong node count");
    const cplx sq = ctx.sqrt_q();

    auto weighted = [&](cplx u) -> cplx {
        cplx v = w_star(wspec, u, ctx) / theta(u * u, ctx);
        if (!even) v *= theta(u * sq, ctx);
        return v;
    };

    const cplx lhs = weighted(y);
    cplx rhs = 0.0;
    double scale = std::abs(lhs);
    for (int j = 0; j < nodes; ++j) {
        const cplx term = weighted(zs[j]) * omega_basis(j, zs, ctx.q(), y, ctx);
        rhs += term;
        scale += std::abs(term);
    }
    return std::abs(lhs - rhs) / (scale + ctx.eps());
}

cplx delta_n(const std::vector<cplx>& xs, const QContext& ctx) {
    const int n = static_cast<int>(xs.size());
    cplx v = 1.0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) v *= xs[k] * theta(xs[j] / xs[k], ctx);
    return v;
}

double theta_det_ratio(const std::vector<SampledFunction>& fs,
                       const std::vector<std::vector<cplx>>& xss, cplx c,
                       const QContext& ctx) {
    const int n = static_cast<int>(fs.size());
    if (xss.size() != 2) throw DomainError("theta_det_ratio: expected two node lists");

    // ratio() also reports the magnitude scale of the quotient before the
    // determinant's internal cancellation, so the final residual can be
    // normalized by what was actually summed instead of by a possibly tiny
    // determinant value.
    auto ratio = [&](const std::vector<cplx>& xs, double& scale) -> cplx {
        if (static_cast<int>(xs.size()) != n)
            throw DomainError("theta_det_ratio: node list size mismatch");
        std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = fs[i](xs[j]);
        cplx px = 1.0;
        for (const cplx& x : xs) px *= x;
        const cplx den = delta_n(xs, ctx) * theta(c * px, ctx);
        if (std::abs(den) < 1e-10) throw DegenerateNodes("theta_det_ratio: degenerate node list");
        scale = perm_abs(m) / std::abs(den);
        return det_small(std::move(m)) / den;
    };

    double s0 = 0.0, s1 = 0.0;
    const cplx r0 = ratio(xss[0], s0);
    const cplx r1 = ratio(xss[1], s1);
    return std::abs(r0 - r1) / (s0 + s1 + ctx.eps());
}

}  // namespace qs
