#include "qs/series.hpp"

#include <cmath>

namespace qs {

namespace {

void check_denominator(cplx f, const char* what) {
    if (std::abs(f) == 0.0) throw DivisionByZero(what);
}

}  // namespace

SeriesSpec::SeriesSpec(std::vector<cplx> a_, std::vector<cplx> b_)
    : r(static_cast<int>(a_.size())), a(std::move(a_)), b(std::move(b_)) {
    if (a.size() != b.size() || a.empty())
        throw DomainError("SeriesSpec: parameter lists must be non-empty and of equal length");
    for (const cplx& aj : a)
        if (aj == 0.0) throw DomainError("SeriesSpec: every a_j must be non-zero");
}

cplx SeriesSpec::prod_a() const {
    cplx p = 1.0;
    for (const cplx& v : a) p *= v;
    return p;
}

cplx SeriesSpec::prod_b() const {
    cplx p = 1.0;
    for (const cplx& v : b) p *= v;
    return p;
}

WSpec::WSpec(int r_, std::vector<cplx> a_) : r(r_), a(std::move(a_)) {
    if (r < 3) throw DomainError("WSpec: r must be >= 3");
    if (static_cast<int>(a.size()) != r - 2)
        throw DomainError("WSpec: expected r-2 parameters");
    for (const cplx& aj : a)
        if (aj == 0.0) throw DomainError("WSpec: every a_j must be non-zero");
}

cplx WSpec::prod_a() const {
    cplx p = 1.0;
    for (const cplx& v : a) p *= v;
    return p;
}

cplx WSpec::base_ratio(const QContext& ctx) const {
    cplx p = 1.0;
    for (int k = 0; k < r - 4; ++k) p *= ctx.sqrt_q();
    if (r == 3) p = 1.0 / ctx.sqrt_q();
    return p / prod_a();
}

Annulus psi_annulus(const SeriesSpec& spec, const QContext&) {
    return Annulus{std::abs(spec.prod_b() / spec.prod_a()), 1.0};
}

cplx psi_term(const SeriesSpec& spec, cplx x, cplx y, long n, const QContext& ctx) {
    cplx num = 1.0, den = 1.0;
    for (int j = 0; j < spec.r; ++j) {
        num *= qpoch(spec.a[j] * y, n, ctx);
        den *= qpoch(spec.b[j] * y, n, ctx);
    }
    check_denominator(den, "psi_term: denominator Pochhammer vanishes");
    return num / den * std::pow(x, static_cast<double>(n));
}

SeriesValue psi_full(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx) {
    const Annulus ann = psi_annulus(spec, ctx);
    const double margin = std::pow(ctx.eps(), 0.25);
    const double ax = std::abs(x);
    if (ann.empty() || ax < ann.inner * (1.0 + margin) || ax > 1.0 - margin)
        throw OutsideAnnulus("psi: x outside the convergence annulus (with margin)");

    const cplx q = ctx.q();
    const int r = spec.r;
    SeriesValue out;
    cplx sum = 1.0;  // n = 0 term
    double scale = 1.0;
    int terms = 1;

    // Forward direction: t_{n+1} = t_n * x * prod (1 - a_j y q^n)/(1 - b_j y q^n).
    {
        cplx t = 1.0, qn = 1.0;
        int small_run = 0;
        long n = 0;
        while (true) {
            cplx num = 1.0, den = 1.0;
            for (int j = 0; j < r; ++j) {
                num *= 1.0 - spec.a[j] * y * qn;
                den *= 1.0 - spec.b[j] * y * qn;
            }
            check_denominator(den, "psi: term denominator vanishes (forward)");
            t *= x * num / den;
            qn *= q;
            ++n;
            sum += t;
            ++terms;
            const double at = std::abs(t);
            if (at > scale) scale = at;
            if (at < ctx.eps() * (1.0 + std::abs(sum))) {
                if (++small_run >= ctx.consec_small()) break;
            } else {
                small_run = 0;
            }
            if (n >= ctx.max_terms()) throw NotConverged("psi: forward direction did not converge");
        }
    }
    // Backward direction: t_{n-1} = t_n * prod (1 - b_j y q^{n-1}) / (x * prod (1 - a_j y q^{n-1})).
    {
        cplx t = 1.0, qn = 1.0 / q;  // q^{n-1} with n = 0
        int small_run = 0;
        long n = 0;
        while (true) {
            cplx num = 1.0, den = 1.0;
            for (int j = 0; j < r; ++j) {
                num *= 1.0 - spec.b[j] * y * qn;
                den *= 1.0 - spec.a[j] * y * qn;
            }
            check_denominator(den, "psi: term denominator vanishes (backward)");
            t *= num / (x * den);
            qn /= q;
            --n;
            sum += t;
            ++terms;
            const double at = std::abs(t);
            if (at > scale) scale = at;
            if (at < ctx.eps() * (1.0 + std::abs(sum))) {
                if (++small_run >= ctx.consec_small()) break;
            } else {
                small_run = 0;
            }
            if (-n >= ctx.max_terms()) throw NotConverged("psi: backward direction did not converge");
        }
    }
    out.value = sum;
    out.scale = scale;
    out.terms_used = terms;
    return out;
}

cplx psi(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx) {
    return psi_full(spec, x, y, ctx).value;
}

static cplx psi_star_prefactor(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx) {
    const cplx q = ctx.q();
    cplx pref = qpoch_inf(x, ctx) * qpoch_inf(spec.prod_b() / (spec.prod_a() * x), ctx);
    for (int j = 0; j < spec.r; ++j)
        pref *= qpoch_inf(q / (spec.a[j] * y), ctx) * qpoch_inf(spec.b[j] * y, ctx);
    return pref;
}

SeriesValue psi_star_full(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx) {
    SeriesValue v = psi_full(spec, x, y, ctx);
    const cplx pref = psi_star_prefactor(spec, x, y, ctx);
    v.value *= pref;
    v.scale *= std::abs(pref);
    return v;
}

cplx psi_star(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx) {
    return psi_star_full(spec, x, y, ctx).value;
}

SeriesValue w_series_full(const WSpec& wspec, cplx y, const QContext& ctx) {
    if (y == 0.0) throw DomainError("w_series: y must be non-zero");
    const cplx z = wspec.base_ratio(ctx);
    const double margin = std::pow(ctx.eps(), 0.25);
    if (std::abs(z) > 1.0 - margin)
        throw OutsideAnnulus("w_series: convergence condition |a_1...a_{r-2}| > |q|^{(r-4)/2} fails (with margin)");

    const cplx q = ctx.q();
    const int m = wspec.r - 2;
    const cplx y2 = y * y;

    SeriesValue out;
    cplx sum = 1.0 - y2;  // n = 0 term
    double scale = std::max(std::abs(sum), 1.0);
    int terms = 1;

    // v_n excludes the (1 - y^2 q^{2n}) factor so the ratio recursion never
    // passes through a zero of the summand.
    {
        cplx v = 1.0, qn = 1.0, q2n = 1.0;
        int small_run = 0;
        long n = 0;
        while (true) {
            cplx num = 1.0, den = 1.0;
            for (int j = 0; j < m; ++j) {
                num *= 1.0 - wspec.a[j] * y * qn;
                den *= 1.0 - q * y / wspec.a[j] * qn;
            }
            check_denominator(den, "w_series: term denominator vanishes (forward)");
            v *= z * num / den;
            qn *= q;
            q2n *= q * q;
            ++n;
            const cplx t = v * (1.0 - y2 * q2n);
            sum += t;
            ++terms;
            const double at = std::abs(t);
            if (at > scale) scale = at;
            if (at < ctx.eps() * (1.0 + std::abs(sum))) {
                if (++small_run >= ctx.consec_small()) break;
            } else {
                small_run = 0;
            }
            if (n >= ctx.max_terms()) throw NotConverged("w_series: forward direction did not converge");
        }
    }
    {
        cplx v = 1.0, qn = 1.0 / q, q2n = 1.0;
        int small_run = 0;
        long n = 0;
        while (true) {
            cplx num = 1.0, den = 1.0;
            for (int j = 0; j < m; ++j) {
                num *= 1.0 - q * y / wspec.a[j] * qn;
                den *= 1.0 - wspec.a[j] * y * qn;
            }
            check_denominator(den, "w_series: term denominator vanishes (backward)");
            v *= num / (z * den);
            qn /= q;
            q2n /= q * q;
            --n;
            const cplx t = v * (1.0 - y2 * q2n);
            sum += t;
            ++terms;
            const double at = std::abs(t);
            if (at > scale) scale = at;
            if (at < ctx.eps() * (1.0 + std::abs(sum))) {
                if (++small_run >= ctx.consec_small()) break;
            } else {
                small_run = 0;
            }
            if (-n >= ctx.max_terms()) throw NotConverged("w_series: backward direction did not converge");
        }
    }
    out.value = sum;
    out.scale = scale;
    out.terms_used = terms;
    return out;
}

cplx w_series(const WSpec& wspec, cplx y, const QContext& ctx) {
    return w_series_full(wspec, y, ctx).value;
}

static cplx w_star_prefactor(const WSpec& wspec, cplx y, const QContext& ctx) {
    const cplx q = ctx.q();
    cplx pref = qpoch_inf(wspec.base_ratio(ctx), ctx);
    for (const cplx& aj : wspec.a)
        pref *= qpoch_inf(q / (aj * y), ctx) * qpoch_inf(q * y / aj, ctx);
    return pref;
}

SeriesValue w_star_full(const WSpec& wspec, cplx y, const QContext& ctx) {
    SeriesValue v = w_series_full(wspec, y, ctx);
    const cplx pref = w_star_prefactor(wspec, y, ctx);
    v.value *= pref;
    v.scale *= std::abs(pref);
    return v;
}

cplx w_star(const WSpec& wspec, cplx y, const QContext& ctx) {
    return w_star_full(wspec, y, ctx).value;
}

}  // namespace qs
