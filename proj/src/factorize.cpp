#include "qs/factorize.hpp"

#include <algorithm>
#include <cmath>

#include "qs/elliptic.hpp"
#include "qs/rng.hpp"

namespace qs {

namespace {

// Minimal log-distance between y and the lattice {rep * q^k}.
double class_log_distance(cplx y, cplx rep, const QContext& ctx) {
    double best = 1e300;
    for (int k = -4; k <= 4; ++k) {
        const cplx w = y / (rep * std::pow(ctx.q(), static_cast<double>(k)));
        const double d = std::abs(std::log(w));
        if (d < best) best = d;
    }
    return best;
}

// One Newton iteration sequence on y -> psi_star(spec, x, y). Returns true on
// convergence; the refined root is written back to y.
bool newton_zero(const SeriesSpec& spec, cplx x, cplx& y, const QContext& ctx,
                 int max_iters = 60) {
    for (int it = 0; it < max_iters; ++it) {
        const double h = 1e-7 * std::abs(y);
        cplx f, fp, fm;
        try {
            f = psi_star(spec, x, y, ctx);
            fp = psi_star(spec, x, y + h, ctx);
            fm = psi_star(spec, x, y - h, ctx);
        } catch (const DivisionByZero&) {
            return false;
        }
        const cplx df = (fp - fm) / (2.0 * h);
        if (std::abs(df) == 0.0) return false;
        const cplx step = f / df;
        y -= step;
        if (std::abs(y) < 1e-12 || std::abs(y) > 1e12) return false;
        if (std::abs(step) < 1e-13 * std::abs(y)) return true;
    }
    return false;
}

// Winding number of f along the circle |y| = radius (phase accumulation over
// 512 samples). Returns false when f comes too close to zero on the circle.
bool circle_winding(const SeriesSpec& spec, cplx x, double radius, const QContext& ctx,
                    double& winding) {
    constexpr int kSamples = 512;
    double maxmod = 0.0, minmod = 1e300;
    cplx prev;
    double acc = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double phi = 2.0 * M_PI * i / kSamples;
        const cplx y = radius * cplx(std::cos(phi), std::sin(phi));
        const cplx f = psi_star(spec, x, y, ctx);
        const double af = std::abs(f);
        maxmod = std::max(maxmod, af);
        minmod = std::min(minmod, af);
        if (i > 0) acc += std::arg(f / prev);
        prev = f;
    }
    if (minmod < 1e-5 * maxmod) return false;
    winding = acc / (2.0 * M_PI);
    return true;
}

}  // namespace

RhoClass RhoClass::canonical(cplx z, cplx anchor, const QContext& ctx) {
    if (z == 0.0 || anchor == 0.0) throw DomainError("RhoClass: zero representative");
    const cplx q = ctx.q();
    cplx v = z * anchor;
    while (std::abs(v) > 1.0) v *= q;
    while (std::abs(v) <= ctx.abs_q()) v /= q;
    return RhoClass{v / anchor};
}

bool RhoClass::same_class(const RhoClass& other, const QContext& ctx, double tol) const {
    const cplx w = rep / other.rep;
    const long k = std::lround(std::log(std::abs(w)) / std::log(ctx.abs_q()));
    const cplx residue = w / std::pow(ctx.q(), static_cast<double>(k));
    return std::abs(residue - 1.0) < tol;
}

std::vector<RhoClass> find_rhos(const SeriesSpec& spec, cplx x, const QContext& ctx,
                                long* q_exponent_out) {
    const int r = spec.r;
    const double aq = ctx.abs_q();

    // Zero count by the argument principle over the annulus boundary;
    // perturb the outer radius if a zero sits too close to it.
    const double deltas[] = {1.0, 0.97, 1.03, 0.92, 1.08};
    double delta = 0.0;
    long count = -1;
    for (double d : deltas) {
        double w_out, w_in;
        if (!circle_winding(spec, x, d, ctx, w_out)) continue;
        if (!circle_winding(spec, x, aq * d, ctx, w_in)) continue;
        const double w = w_out - w_in;
        if (std::abs(w - std::lround(w)) > 0.1) continue;
        delta = d;
        count = std::lround(w);
        break;
    }
    if (count < 0)
        throw ZeroCountMismatch("find_rhos: could not obtain a clean winding number");
    if (count != r)
        throw ZeroCountMismatch("find_rhos: winding number " + std::to_string(count) +
                                " != r = " + std::to_string(r));

    // Multi-seed Newton over a modulus-argument grid, dedup modulo q^Z.
    std::vector<RhoClass> classes;
    bool stalled_seed = false;
    for (int im = 0; im < 8 && static_cast<int>(classes.size()) < r; ++im) {
        const double radius = std::exp(std::log(aq * delta) +
                                       (std::log(delta) - std::log(aq * delta)) * (im + 0.5) / 8.0);
        for (int ia = 0; ia < 24 && static_cast<int>(classes.size()) < r; ++ia) {
            const double phi = 2.0 * M_PI * (ia + 0.37) / 24.0;
            cplx y = radius * cplx(std::cos(phi), std::sin(phi));
            if (!newton_zero(spec, x, y, ctx)) {
                stalled_seed = true;
                continue;
            }
            const SeriesValue sv = psi_star_full(spec, x, y, ctx);
            if (std::abs(sv.value) > 1e-8 * sv.scale) continue;
            const RhoClass cls = RhoClass::canonical(y, 1.0, ctx);
            bool fresh = true;
            for (const RhoClass& c : classes)
                if (c.same_class(cls, ctx, 1e-6)) fresh = false;
            if (fresh) classes.push_back(cls);
        }
    }
    if (static_cast<int>(classes.size()) < r) {
        if (stalled_seed)
            throw NewtonStall("find_rhos: seeds failed to converge before full coverage");
        throw ZeroCountMismatch("find_rhos: fewer distinct zero classes than the winding count");
    }

    // Canonicalize; for r = 2 the scaling anchor is sqrt(a1 a2 x).
    const cplx anchor = (r == 2) ? std::sqrt(spec.prod_a() * x) : cplx(1.0);
    for (RhoClass& c : classes) c = RhoClass::canonical(c.rep, anchor, ctx);
    std::sort(classes.begin(), classes.end(), [](const RhoClass& u, const RhoClass& v) {
        if (u.rep.real() != v.rep.real()) return u.rep.real() < v.rep.real();
        return u.rep.imag() < v.rep.imag();
    });

    // Product relation: prod rep_j * a_1...a_r * x must be an integer power of
    // q; rescale the last representative to force the exponent to zero.
    cplx prod = spec.prod_a() * x;
    for (const RhoClass& c : classes) prod *= c.rep;
    const long k = std::lround(std::log(std::abs(prod)) / std::log(aq));
    const cplx residue = prod / std::pow(ctx.q(), static_cast<double>(k));
    if (std::abs(residue - 1.0) > 1e-6)
        throw ZeroCountMismatch("find_rhos: product relation violated");
    classes.back().rep /= std::pow(ctx.q(), static_cast<double>(k));
    if (q_exponent_out) *q_exponent_out = k;
    return classes;
}

cplx extract_A(const SeriesSpec& spec, cplx x, const std::vector<RhoClass>& rhos,
               const QContext& ctx) {
    SplitMix64 rng(0x5eedULL);
    std::vector<cplx> values;
    for (int attempt = 0; attempt < 100 && values.size() < 3; ++attempt) {
        const cplx y0 = rng.log_annulus(ctx.abs_q(), 1.0);
        bool ok = true;
        for (const RhoClass& c : rhos)
            if (class_log_distance(y0, c.rep, ctx) < 1e-2) ok = false;
        if (!ok) continue;
        cplx den = 1.0;
        for (const RhoClass& c : rhos) den *= theta(y0 / c.rep, ctx);
        values.push_back(psi_star(spec, x, y0, ctx) / den);
    }
    if (values.size() < 3)
        throw ProbeDegenerate("extract_A: no admissible probe points found");
    for (size_t i = 1; i < values.size(); ++i)
        if (std::abs(values[i] - values[0]) > 1e-8 * std::abs(values[0]) * 10.0)
            throw ProbeDegenerate("extract_A: probe values disagree");
    return values[0];
}

FactorizationResult factorize(const SeriesSpec& spec, cplx x, const QContext& ctx) {
    FactorizationResult out;
    out.x = x;
    out.rhos = find_rhos(spec, x, ctx, &out.q_exponent);
    out.A = extract_A(spec, x, out.rhos, ctx);

    SplitMix64 rng(0xfacadeULL);
    double worst = 0.0;
    int checked = 0;
    for (int attempt = 0; attempt < 200 && checked < 20; ++attempt) {
        const cplx y = rng.log_annulus(ctx.abs_q(), 1.0);
        bool ok = true;
        for (const RhoClass& c : out.rhos)
            if (class_log_distance(y, c.rep, ctx) < 1e-2) ok = false;
        if (!ok) continue;
        cplx recon = out.A;
        for (const RhoClass& c : out.rhos) recon *= theta(y / c.rep, ctx);
        const cplx direct = psi_star(spec, x, y, ctx);
        worst = std::max(worst,
                         std::abs(direct - recon) / std::max(std::abs(direct), std::abs(recon)));
        ++checked;
    }
    out.residual = worst;
    return out;
}

cplx track_rho(const SeriesSpec& spec2, cplx x_from, cplx x_to, cplx rho_start,
               const QContext& ctx) {
    if (x_to == x_from) return rho_start;
    const cplx path = std::log(x_to / x_from);
    const double total = std::abs(path);
    const cplx dir = path / total;
    // Adaptive predictor-corrector: halve the log-space step whenever the
    // corrector fails or the zero moves by more than a third of its modulus
    // (sqrt-type behaviour near branch points needs very small steps there).
    double t = 0.0, h = std::min(0.05, total);
    cplx rho = rho_start;
    int evals = 0;
    while (t < total) {
        if (++evals > 4000) throw BranchJump("track_rho: step budget exhausted");
        const double step = std::min(h, total - t);
        const cplx xk = x_from * std::exp(dir * (t + step));
        cplx candidate = rho;
        bool ok;
        try {
            ok = newton_zero(spec2, xk, candidate, ctx);
        } catch (const Error&) {
            ok = false;  // evaluation failed at this step size; refine
        }
        if (ok && std::abs(candidate - rho) <= 0.4 * std::abs(rho)) {
            rho = candidate;
            t += step;
            h = std::min(h * 1.6, 0.05);
            continue;
        }
        h *= 0.5;
        if (h < 1e-4)
            throw BranchJump("track_rho: zero not trackable through this region "
                             "(branch point on or near the path)");
    }
    return rho;
}

std::vector<cplx> track_rho_many(const SeriesSpec& spec2, cplx base_x, cplx rho_base,
                                 const std::vector<cplx>& targets, const QContext& ctx) {
    std::vector<cplx> out;
    out.reserve(targets.size());
    for (const cplx& t : targets) out.push_back(track_rho(spec2, base_x, t, rho_base, ctx));
    return out;
}

cplx extract_A2(const SeriesSpec& spec2, cplx x, cplx rho_x, const QContext& ctx) {
    if (spec2.r != 2) throw DomainError("extract_A2: requires r = 2");
    const cplx c = spec2.prod_a() * x;
    const cplx rho_other = 1.0 / (c * rho_x);
    SplitMix64 rng(0x5eed2ULL);
    std::vector<cplx> values;
    for (int attempt = 0; attempt < 100 && values.size() < 3; ++attempt) {
        const cplx y0 = rng.log_annulus(ctx.abs_q(), 1.0);
        if (class_log_distance(y0, rho_x, ctx) < 1e-2 ||
            class_log_distance(y0, rho_other, ctx) < 1e-2)
            continue;
        values.push_back(psi_star(spec2, x, y0, ctx) /
                         (theta(y0 / rho_x, ctx) * theta(c * y0 * rho_x, ctx)));
    }
    if (values.size() < 3) throw ProbeDegenerate("extract_A2: no admissible probe points found");
    for (size_t i = 1; i < values.size(); ++i)
        if (std::abs(values[i] - values[0]) > 1e-7 * std::abs(values[0]))
            throw ProbeDegenerate("extract_A2: probe values disagree");
    return values[0];
}

// Tracks a coherent branch of rho to x/q, x, qx, q^2 x, q^3 x as needed by the
// A-rho relations, starting from the known zero 1/a_1 at x = 1.
static void tracked_branch(const SeriesSpec& spec2, cplx x, const QContext& ctx,
                           cplx& rho_xq, cplx& rho_x, cplx& rho_qx, cplx& rho_q2x,
                           cplx& rho_q3x, bool need_xq, bool need_q3x) {
    const cplx q = ctx.q();
    // The leg out of the base needs evaluations with |x| close to 1, where the
    // bilateral series converges slowly; give it a larger truncation budget.
    const QContext base_ctx(ctx.q(), ctx.eps(), std::max(ctx.max_terms(), 1 << 17),
                            ctx.consec_small());
    // Leave the base through a fixed complex waypoint: for some q a branch
    // point of rho sits (numerically) right next to x = 1 and the detour keeps
    // the path clear of it deterministically. The series cannot be evaluated
    // at |x| ~ 1 itself, so the first hop goes straight to |x1| = 0.985 and
    // re-acquires the zero nearest to the known boundary value 1/a_1.
    const cplx x1 = std::exp(cplx(-0.015, 0.029));
    const cplx rho_base = 1.0 / spec2.a[0];
    cplx rho_1 = 0.0;
    {
        double sc = 0.0;
        try {
            sc = psi_star_full(spec2, x1, rho_base * std::exp(cplx(0.0, 1.1)), base_ctx).scale;
        } catch (const Error&) {
            throw BranchJump("tracked_branch: cannot evaluate near the base point");
        }
        bool found = false;
        for (double dm : {0.0, 0.15, -0.15})
            for (double da : {0.0, 0.25, -0.25}) {
                cplx seed = rho_base * (1.0 + dm) * std::exp(cplx(0.0, da));
                try {
                    if (!newton_zero(spec2, x1, seed, base_ctx)) continue;
                    if (std::abs(psi_star(spec2, x1, seed, base_ctx)) > 1e-8 * sc) continue;
                } catch (const Error&) {
                    continue;
                }
                if (!found || std::abs(seed - rho_base) < std::abs(rho_1 - rho_base)) {
                    rho_1 = seed;
                    found = true;
                }
            }
        if (!found) throw BranchJump("tracked_branch: lost the zero next to the base point");
    }
    const cplx waypoint = std::exp(cplx(-0.18, 0.35));
    cplx rho_w = track_rho(spec2, x1, waypoint, rho_1, base_ctx);
    rho_x = track_rho(spec2, waypoint, x, rho_w, ctx);
    if (need_xq) rho_xq = track_rho(spec2, x, x / q, rho_x, ctx);
    rho_qx = track_rho(spec2, x, q * x, rho_x, ctx);
    rho_q2x = track_rho(spec2, q * x, q * q * x, rho_qx, ctx);
    if (need_q3x) rho_q3x = track_rho(spec2, q * q * x, q * q * q * x, rho_q2x, ctx);
}

double verify_A_rho_relation(const SeriesSpec& spec2, cplx x, const QContext& ctx) {
    const cplx q = ctx.q();
    const cplx a1 = spec2.a[0], a2 = spec2.a[1], b1 = spec2.b[0], b2 = spec2.b[1];
    cplx rho_xq, rho_x, rho_qx, unused2, unused3;
    tracked_branch(spec2, x, ctx, rho_xq, rho_x, rho_qx, unused2, unused3, true, false);

    const cplx A = extract_A2(spec2, x, rho_x, ctx);
    const cplx c = a1 * a2 * x;

    const cplx poch = qpoch_multi_inf(
        {x, b1 * b2 / (a1 * a2 * x), b1 / a1, b1 / a2, b2 / a1, b2 / a2}, ctx);
    const cplx rhs = c * rho_x * poch /
                     (((a1 + a2) * x - b1 - b2) * theta(rho_xq / rho_x, ctx)) *
                     theta(rho_xq / rho_qx, ctx) * theta(c * rho_xq * rho_qx, ctx) /
                     (theta(rho_x / rho_qx, ctx) * theta(c * rho_x * rho_xq, ctx) *
                      theta(c * rho_x * rho_qx, ctx));
    (void)q;
    return std::abs(A * A - rhs) / std::abs(A * A);
}

double verify_A_ratio_relations(const SeriesSpec& spec2, cplx x, const QContext& ctx) {
    const cplx q = ctx.q();
    const cplx a1 = spec2.a[0], a2 = spec2.a[1], b1 = spec2.b[0], b2 = spec2.b[1];
    cplx rho_xq, rho_x, rho_qx, rho_q2x, unused;
    tracked_branch(spec2, x, ctx, rho_xq, rho_x, rho_qx, rho_q2x, unused, false, false);

    const cplx A_x = extract_A2(spec2, x, rho_x, ctx);
    const cplx A_qx = extract_A2(spec2, q * x, rho_qx, ctx);
    const cplx A_q2x = extract_A2(spec2, q * q * x, rho_q2x, ctx);
    const cplx c = a1 * a2 * x;

    const cplx r1_lhs = A_qx / A_q2x;
    const cplx r1_rhs = -rho_qx * (1.0 - q * x) * theta(rho_x / rho_q2x, ctx) *
                        theta(c * rho_x * rho_q2x, ctx) /
                        (rho_q2x * rho_q2x * ((a1 + a2) * q * x - b1 - b2) *
                         theta(rho_x / rho_qx, ctx) * theta(c * rho_x * rho_qx, ctx));
    const cplx r2_lhs = A_q2x / A_x;
    const cplx r2_rhs = rho_q2x * rho_q2x * (a1 * a2 * q * x - b1 * b2) *
                        theta(rho_qx / rho_x, ctx) * theta(c * rho_x * rho_qx, ctx) /
                        ((1.0 - q * x) * theta(rho_qx / rho_q2x, ctx) *
                         theta(c * rho_qx * rho_q2x, ctx));
    const cplx r3_lhs = A_x / A_qx;
    const cplx r3_rhs = ((a1 + a2) * q * x - b1 - b2) * theta(rho_q2x / rho_qx, ctx) *
                        theta(c * rho_qx * rho_q2x, ctx) /
                        (rho_qx * (a1 * a2 * q * x - b1 * b2) * theta(rho_q2x / rho_x, ctx) *
                         theta(c * rho_x * rho_q2x, ctx));

    double worst = std::abs(r1_lhs - r1_rhs) / std::abs(r1_lhs);
    worst = std::max(worst, std::abs(r2_lhs - r2_rhs) / std::abs(r2_lhs));
    worst = std::max(worst, std::abs(r3_lhs - r3_rhs) / std::abs(r3_lhs));
    return worst;
}

double verify_rho_functional_equation(const SeriesSpec& spec2, cplx x, const QContext& ctx) {
    const cplx q = ctx.q();
    const cplx a1 = spec2.a[0], a2 = spec2.a[1], b1 = spec2.b[0], b2 = spec2.b[1];
    if (std::abs(1.0 - q * x) < 1e-3 || std::abs(b1 * b2 - a1 * a2 * q * q * x) < 1e-3)
        throw DomainError("verify_rho_functional_equation: degenerate denominator");
    cplx rho_xq, rho_x, rho_qx, rho_q2x, rho_q3x;
    tracked_branch(spec2, x, ctx, rho_xq, rho_x, rho_qx, rho_q2x, rho_q3x, false, true);
    const cplx c = a1 * a2 * x;

    const cplx lhs = theta(rho_qx / rho_q3x, ctx) * theta(c * rho_qx * rho_q3x, ctx) /
                     (theta(rho_q2x / rho_q3x, ctx) * theta(c * rho_q2x * rho_q3x, ctx));
    const cplx rhs = (b1 + b2 - (a1 + a2) * q * x) * (b1 + b2 - (a1 + a2) * q * q * x) *
                     theta(rho_qx / rho_x, ctx) * theta(c * rho_x * rho_qx, ctx) /
                     ((1.0 - q * x) * (b1 * b2 - a1 * a2 * q * q * x) *
                      theta(rho_q2x / rho_x, ctx) * theta(c * rho_x * rho_q2x, ctx));
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

RhoClass rho_via_integral(const SeriesSpec& spec2, cplx x, const QContext& ctx) {
    if (spec2.r != 2) throw DomainError("rho_via_integral: requires r = 2");
    const cplx s = std::sqrt(spec2.prod_a() * x);
    const SeriesValue plus = psi_star_full(spec2, x, 1.0 / s, ctx);
    const SeriesValue minus = psi_star_full(spec2, x, -1.0 / s, ctx);
    if (std::abs(plus.value) < 1e-3 * plus.scale || std::abs(minus.value) < 1e-3 * minus.scale)
        throw NearBranchPoint("rho_via_integral: x too close to a branch point of rho");
    const cplx upper = -plus.value / minus.value;

    const InversionConstants consts = InversionConstants::make(ctx);
    if (std::abs(upper) < 1e-3 ||
        std::abs(upper - 1.0 / consts.k1) < 1e-3 * std::abs(1.0 / consts.k1) ||
        std::abs(upper - 1.0 / consts.k2) < 1e-3 * std::abs(1.0 / consts.k2))
        throw NearBranchPoint("rho_via_integral: integral upper limit near a branch point");

    const cplx integral = inversion_integral(upper, consts, ctx);
    const cplx rho = std::exp(integral / consts.norm) / s;
    return RhoClass::canonical(rho, s, ctx);
}

double verify_bailey_symmetry(const SeriesSpec& spec2, cplx x, cplx y, const QContext& ctx) {
    if (spec2.r != 2) throw DomainError("verify_bailey_symmetry: requires r = 2");
    const cplx lhs = psi_star(spec2, x, y, ctx);
    const cplx rhs = psi_star(spec2, x, ctx.q() / (spec2.prod_a() * x * y), ctx);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

}  // namespace qs
