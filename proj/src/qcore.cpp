#include "qs/qcore.hpp"

#include <cmath>

namespace qs {

QContext::QContext(cplx q, double eps, int max_terms, int consec_small)
    : q_(q), abs_q_(std::abs(q)), eps_(eps), max_terms_(max_terms), consec_small_(consec_small) {
    if (abs_q_ < 1e-6 || abs_q_ > 0.9)
        throw DomainError("QContext: |q| must lie in [1e-6, 0.9], got |q|=" + std::to_string(abs_q_));
    if (!(eps_ > 0.0 && eps_ < 1e-3))
        throw DomainError("QContext: eps must lie in (0, 1e-3)");
    if (max_terms_ < 64)
        throw DomainError("QContext: max_terms must be >= 64");
    if (consec_small_ < 2)
        throw DomainError("QContext: consec_small must be >= 2");
    sqrt_q_ = std::sqrt(q_);
}

cplx qpoch(cplx x, long n, const QContext& ctx) {
    const cplx q = ctx.q();
    if (n >= 0) {
        cplx prod = 1.0;
        cplx qm = 1.0;  // q^m, factors multiplied in increasing m
        for (long m = 0; m < n; ++m) {
            prod *= 1.0 - x * qm;
            qm *= q;
        }
        return prod;
    }
    // (x)_n = 1 / prod_{m=n}^{-1} (1 - x q^m)
    cplx prod = 1.0;
    cplx qm = std::pow(q, static_cast<double>(n));
    for (long m = n; m < 0; ++m) {
        const cplx f = 1.0 - x * qm;
        if (std::abs(f) == 0.0)
            throw DivisionByZero("qpoch: factor 1 - x q^m vanishes at negative index");
        prod *= f;
        qm *= q;
    }
    return 1.0 / prod;
}

cplx qpoch_inf(cplx x, const QContext& ctx) {
    const cplx q = ctx.q();
    const double cutoff = ctx.eps() * (1.0 - ctx.abs_q());
    cplx prod = 1.0;
    cplx xqm = x;  // x q^m
    int small_run = 0;
    for (int m = 0; m < ctx.max_terms(); ++m) {
        prod *= 1.0 - xqm;
        if (std::abs(xqm) < cutoff) {
            if (++small_run >= ctx.consec_small()) return prod;
        } else {
            small_run = 0;
        }
        xqm *= q;
    }
    throw NotConverged("qpoch_inf: truncation cap exceeded");
}

cplx qpoch_multi(const std::vector<cplx>& xs, long n, const QContext& ctx) {
    cplx prod = 1.0;
    for (const cplx& x : xs) prod *= qpoch(x, n, ctx);
    return prod;
}

cplx qpoch_multi_inf(const std::vector<cplx>& xs, const QContext& ctx) {
    cplx prod = 1.0;
    for (const cplx& x : xs) prod *= qpoch_inf(x, ctx);
    return prod;
}

cplx theta(cplx x, const QContext& ctx) {
    if (x == 0.0) throw DomainError("theta: x must be non-zero");
    const cplx q = ctx.q();
    return qpoch_inf(x, ctx) * qpoch_inf(q / x, ctx) * qpoch_inf(q, ctx);
}

}  // namespace qs
