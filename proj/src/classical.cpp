#include "qs/classical.hpp"

#include <cmath>

namespace qs {

std::pair<cplx, cplx> q_gauss(cplx a, cplx b, cplx x, const QContext& ctx) {
    if (std::abs(x) >= 1.0 - std::pow(ctx.eps(), 0.25))
        throw DomainError("q_gauss: requires |x| < 1 (with margin)");
    const cplx q = ctx.q();
    cplx sum = 1.0, t = 1.0, qn = 1.0;
    int small_run = 0;
    for (long n = 0;; ++n) {
        const cplx den = (1.0 - q * qn) * (1.0 - a * b * x * qn);
        if (std::abs(den) == 0.0) throw DivisionByZero("q_gauss: denominator factor vanishes");
        t *= (1.0 - a * qn) * (1.0 - b * qn) / den * x;
        qn *= q;
        sum += t;
        if (std::abs(t) < ctx.eps() * (1.0 + std::abs(sum))) {
            if (++small_run >= ctx.consec_small()) break;
        } else {
            small_run = 0;
        }
        if (n >= ctx.max_terms()) throw NotConverged("q_gauss: sum did not converge");
    }
    const cplx rhs = qpoch_inf(a * x, ctx) * qpoch_inf(b * x, ctx) /
                     (qpoch_inf(x, ctx) * qpoch_inf(a * b * x, ctx));
    return {sum, rhs};
}

cplx one_psi_one_rhs(cplx a, cplx b, cplx x, const QContext& ctx) {
    const double ax = std::abs(x);
    if (!(std::abs(b / a) < ax && ax < 1.0))
        throw DomainError("one_psi_one_rhs: requires |b/a| < |x| < 1");
    const cplx q = ctx.q();
    return qpoch_inf(b / a, ctx) * theta(a * x, ctx) /
           qpoch_multi_inf({x, b / (a * x), b, q / a}, ctx);
}

std::pair<cplx, cplx> six_psi_six(const std::vector<cplx>& a, cplx y, const QContext& ctx) {
    if (a.size() != 4) throw DomainError("six_psi_six: expected 4 parameters");
    const cplx q = ctx.q();
    cplx pa = a[0] * a[1] * a[2] * a[3];
    if (std::abs(pa) <= ctx.abs_q() * (1.0 + std::pow(ctx.eps(), 0.25)))
        throw DomainError("six_psi_six: requires |a_1 a_2 a_3 a_4| > |q| (with margin)");
    // The printed bilateral sum coincides with the r = 6 VWP series.
    WSpec wspec(6, a);
    const cplx lhs = w_series(wspec, y, ctx);

    cplx num = theta(y * y, ctx);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) num *= qpoch_inf(q / (a[i] * a[j]), ctx);
    cplx den = qpoch_inf(q / pa, ctx);
    for (int j = 0; j < 4; ++j)
        den *= qpoch_inf(q / (a[j] * y), ctx) * qpoch_inf(q * y / a[j], ctx);
    return {lhs, num / den};
}

cplx psi_star_x1(const SeriesSpec& spec, cplx y, const QContext& ctx) {
    cplx v = qpoch_inf(spec.prod_b() / spec.prod_a(), ctx);
    const cplx qinf = qpoch_inf(ctx.q(), ctx);
    for (int j = 1; j < spec.r; ++j) v /= qinf;
    for (int j = 0; j < spec.r; ++j) v *= theta(spec.a[j] * y, ctx);
    return v;
}

}  // namespace qs
