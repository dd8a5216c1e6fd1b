#include "qs/wronskian.hpp"

#include <cmath>

#include "qs/linalg.hpp"

namespace qs {

namespace {

// Coefficients of prod_j (1 - c_j y) as a polynomial in y.
std::vector<cplx> expand_product(const std::vector<cplx>& cs) {
    std::vector<cplx> poly{1.0};
    for (const cplx& c : cs) {
        std::vector<cplx> next(poly.size() + 1, 0.0);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= c * poly[i];
        }
        poly = std::move(next);
    }
    return poly;
}

}  // namespace

LambdaCoeffs lambda_coeffs(const SeriesSpec& spec, cplx x, const QContext& ctx) {
    const std::vector<cplx> pa = expand_product(spec.a);
    std::vector<cplx> b_over_q(spec.b);
    for (cplx& v : b_over_q) v /= ctx.q();
    const std::vector<cplx> pb = expand_product(b_over_q);
    LambdaCoeffs out;
    out.lambdas.resize(spec.r + 1);
    for (int j = 0; j <= spec.r; ++j) out.lambdas[j] = x * pa[j] - pb[j];
    return out;
}

double psi_star_linear_relation_residual(const SeriesSpec& spec, cplx x, cplx y,
                                         const QContext& ctx) {
    const LambdaCoeffs lc = lambda_coeffs(spec, x, ctx);
    const cplx B_over_A = spec.prod_b() / spec.prod_a();
    cplx sum = 0.0;
    double scale = 0.0;
    cplx yj = 1.0, xqj = x;
    for (int j = 0; j <= spec.r; ++j) {
        const cplx base = B_over_A / (x * std::pow(ctx.q(), static_cast<double>(j)));
        const cplx term = yj * lc.lambdas[j] * qpoch(x, j, ctx) / qpoch(base, j, ctx) *
                          psi_star(spec, xqj, y, ctx);
        sum += term;
        scale += std::abs(term);
        yj *= y;
        xqj *= ctx.q();
    }
    return std::abs(sum) / (scale + ctx.eps());
}

cplx wronskian2(const SeriesSpec& spec2, cplx x, cplx y, cplx z, const QContext& ctx) {
    if (spec2.r != 2) throw DomainError("wronskian2: requires r = 2");
    const cplx q = ctx.q();
    return theta(q * x / y, ctx) * psi_star(spec2, q * x, y, ctx) * theta(x / z, ctx) *
               psi_star(spec2, x, z, ctx) -
           theta(x / y, ctx) * psi_star(spec2, x, y, ctx) * theta(q * x / z, ctx) *
               psi_star(spec2, q * x, z, ctx);
}

double wronskian2_residual(const SeriesSpec& spec2, cplx x, cplx y, cplx z,
                           const QContext& ctx) {
    if (spec2.r != 2) throw DomainError("wronskian2_residual: requires r = 2");
    const cplx q = ctx.q();
    const SeriesValue pqy = psi_star_full(spec2, q * x, y, ctx);
    const SeriesValue pz = psi_star_full(spec2, x, z, ctx);
    const SeriesValue py = psi_star_full(spec2, x, y, ctx);
    const SeriesValue pqz = psi_star_full(spec2, q * x, z, ctx);
    const cplx t1 = theta(q * x / y, ctx) * pqy.value * theta(x / z, ctx) * pz.value;
    const cplx t2 = theta(x / y, ctx) * py.value * theta(q * x / z, ctx) * pqz.value;
    const double s1 = std::abs(theta(q * x / y, ctx) * theta(x / z, ctx)) *
                      (pqy.scale * std::abs(pz.value) + std::abs(pqy.value) * pz.scale);
    const double s2 = std::abs(theta(x / y, ctx) * theta(q * x / z, ctx)) *
                      (py.scale * std::abs(pqz.value) + std::abs(py.value) * pqz.scale);
    const cplx cf = wronskian2_closed_form(spec2, x, y, z, ctx);
    return std::abs(t1 - t2 - cf) / (s1 + s2 + std::abs(cf) + ctx.eps());
}

cplx wronskian2_closed_form(const SeriesSpec& spec2, cplx x, cplx y, cplx z,
                            const QContext& ctx) {
    if (spec2.r != 2) throw DomainError("wronskian2_closed_form: requires r = 2");
    const cplx a1 = spec2.a[0], a2 = spec2.a[1], b1 = spec2.b[0], b2 = spec2.b[1];
    const cplx q = ctx.q();
    const cplx poch = qpoch_multi_inf(
        {b1 / a1, b1 / a2, b2 / a1, b2 / a2, q * x, b1 * b2 / (a1 * a2 * x)}, ctx);
    return z / x * poch * theta(y / z, ctx) * theta(x / y, ctx) * theta(x / z, ctx) *
           theta(a1 * a2 * x * y * z, ctx);
}

cplx gustafson_ratio(const SeriesSpec& spec, cplx x, const std::vector<cplx>& ys,
                     const QContext& ctx, double* scale_out) {
    const int r = spec.r;
    if (r > 3) throw DomainError("gustafson_ratio: supported for r <= 3 only");
    if (static_cast<int>(ys.size()) != r) throw DomainError("gustafson_ratio: expected r nodes");
    const cplx q = ctx.q();

    std::vector<std::vector<cplx>> m(r, std::vector<cplx>(r));
    for (int i = 0; i < r; ++i) {
        cplx yp = 1.0, xq = x;
        for (int j = 0; j < r; ++j) {
            m[i][j] = yp * psi_star(spec, xq, ys[i], ctx);
            yp *= ys[i];
            xq *= q;
        }
    }
    cplx py = spec.prod_a() * x;
    for (const cplx& yv : ys) py *= yv;

    cplx den = delta_n(ys, ctx) * theta(py, ctx);
    const cplx B_over_A = spec.prod_b() / spec.prod_a();
    cplx xqj = q * x;
    for (int j = 1; j <= r - 1; ++j) {
        den *= qpoch_inf(xqj, ctx) *
               qpoch_inf(B_over_A / (x * std::pow(q, static_cast<double>(j - 1))), ctx);
        xqj *= q;
    }
    if (std::abs(den) < 1e-250) throw DegenerateNodes("gustafson_ratio: degenerate node list");
    if (scale_out) *scale_out = perm_abs(m) / std::abs(den);
    return det_small(std::move(m)) / den;
}

cplx gustafson_ratio_value(const SeriesSpec& spec, const QContext& ctx) {
    const int r = spec.r;
    cplx v = 1.0;
    const cplx qinf = qpoch_inf(ctx.q(), ctx);
    for (int k = 0; k < (r - 1) * (r - 2) / 2; ++k) v /= qinf;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) v *= qpoch_inf(spec.b[i] / spec.a[j], ctx);
    return v;
}

double qwronskian_step_check(const std::vector<SampledFunction>& fs,
                             const std::vector<SampledFunction>& cs, cplx x,
                             const QContext& ctx) {
    const int n = static_cast<int>(fs.size());
    if (static_cast<int>(cs.size()) != n + 1)
        throw DomainError("qwronskian_step_check: expected n+1 coefficient functions");
    const cplx q = ctx.q();

    // Guard: each f must satisfy the recurrence at x.
    for (const SampledFunction& f : fs) {
        cplx acc = 0.0;
        double scale = 0.0;
        cplx xq = x;
        for (int m2 = 0; m2 <= n; ++m2) {
            const cplx term = cs[m2](x) * f(xq);
            acc += term;
            scale += std::abs(term);
            xq *= q;
        }
        if (std::abs(acc) > 1e-9 * (scale + ctx.eps()))
            throw GuardFailed("qwronskian_step_check: input does not satisfy the recurrence");
    }

    auto wronskian_at = [&](cplx u, double& scale) -> cplx {
        std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
        for (int i = 0; i < n; ++i) {
            cplx uq = u;
            for (int j = 0; j < n; ++j) {
                m[i][j] = fs[i](uq);
                uq *= q;
            }
        }
        scale = perm_abs(m);
        return det_small(std::move(m));
    };

    double sW_x = 0.0, sW_qx = 0.0;
    const cplx W_x = wronskian_at(x, sW_x);
    const cplx W_qx = wronskian_at(q * x, sW_qx);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const cplx lhs = W_qx * cs[n](x);
    const cplx rhs = sign * cs[0](x) * W_x;
    const double scale = sW_qx * std::abs(cs[n](x)) + sW_x * std::abs(cs[0](x));
    return std::abs(lhs - rhs) / (scale + ctx.eps());
}

}  // namespace qs
