#include "qs/suites.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "qs/classical.hpp"
#include "qs/elliptic.hpp"
#include "qs/errors.hpp"
#include "qs/factorize.hpp"
#include "qs/rng.hpp"
#include "qs/series.hpp"
#include "qs/thetaspaces.hpp"
#include "qs/wronskian.hpp"

namespace qs {

namespace {

constexpr double kTiny = 1e-300;

Suite kAllSuites[] = {Suite::classical,  Suite::theorem1, Suite::theorem2,
                      Suite::vwp,        Suite::slater,   Suite::wronskian,
                      Suite::elliptic,   Suite::thetaspaces};

// Distance of v from the forward pole lattice {q^{-m} : m >= 0}, measured as
// min_m |1 - v q^m|; small values make (v)_n / (v)_inf factors blow up.
double pos_lattice_clearance(cplx v, const QContext& ctx) {
    double best = 1e9;
    cplx w = v;
    for (int m = 0; m <= 96; ++m) {
        best = std::min(best, std::abs(1.0 - w));
        w *= ctx.q();
        if (std::abs(w) < 1e-4) break;
    }
    return best;
}

// Distance of v from the full lattice q^Z (the zero set of theta).
double theta_clearance(cplx v, const QContext& ctx) {
    const double lq = std::log(std::abs(ctx.q()));
    const long k0 = std::lround(std::log(std::abs(v)) / lq);
    double best = 1e9;
    for (long k = k0 - 1; k <= k0 + 1; ++k) {
        cplx qk = std::pow(ctx.q(), cplx(static_cast<double>(k), 0.0));
        best = std::min(best, std::abs(v / qk - 1.0));
    }
    return best;
}

std::string kv(std::initializer_list<std::pair<const char*, cplx>> items) {
    std::string out;
    for (const auto& [key, val] : items) {
        if (!out.empty()) out += ";";
        out += key;
        out += "=";
        out += format_complex(val);
    }
    return out;
}

[[noreturn]] void sampling_failed(const char* what) {
    throw DomainError(std::string("unsatisfiable sampling constraints: ") + what);
}

SeriesSpec standard_spec2() { return SeriesSpec({2.0, 3.0}, {0.1, 0.15}); }
SeriesSpec standard_spec3() { return SeriesSpec({2.0, 3.0, 1.5}, {0.1, 0.15, 0.2}); }

// Per-identity sub-seed so that records are insensitive to the accumulation
// order of other identities in the suite.
SplitMix64 stream(const SuiteConfig& cfg, std::uint64_t tag) {
    SplitMix64 mix(cfg.seed ^ tag);
    mix.next();
    return mix;
}

double rel(cplx lhs, cplx rhs) { return std::abs(lhs - rhs) / (std::abs(rhs) + kTiny); }

double rel_sym(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / (0.5 * (std::abs(lhs) + std::abs(rhs)) + kTiny);
}

// ---------------------------------------------------------------------------
// classical

void suite_classical(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 50;
    const double ts = cfg.tolerance_scale;

    {
        auto rng = stream(cfg, 0x67617573ULL);  // q-Gauss
        for (int i = 0; i < n; ++i) {
            cplx a, b, x;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("q_gauss");
                a = rng.log_annulus(0.3, 2.0);
                b = rng.log_annulus(0.3, 2.0);
                x = rng.log_annulus(0.1, 0.7);
                bool ok = true;
                for (cplx v : {a * b * x, x, a * x, b * x})
                    ok = ok && pos_lattice_clearance(v, ctx) > 2e-2;
                if (ok) break;
            }
            auto [lhs, rhs] = q_gauss(a, b, x, ctx);
            rep.add("q_gauss", kv({{"a", a}, {"b", b}, {"x", x}}), rel(lhs, rhs), 1e-9 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x31707369ULL);  // 1psi1
        for (int i = 0; i < n; ++i) {
            cplx a, b, x;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("one_psi_one");
                a = rng.log_annulus(1.5, 3.0);
                b = rng.log_annulus(0.03, 0.25);
                x = rng.log_annulus(0.45, 0.85);
                if (std::abs(b / a) > 0.35) continue;
                bool ok = theta_clearance(a * x, ctx) > 2e-2;
                for (cplx v : {x, b / (a * x), b, ctx.q() / a})
                    ok = ok && pos_lattice_clearance(v, ctx) > 2e-2;
                if (ok) break;
            }
            SeriesSpec spec({a}, {b});
            cplx lhs = psi(spec, x, 1.0, ctx);
            cplx rhs = one_psi_one_rhs(a, b, x, ctx);
            rep.add("one_psi_one", kv({{"a", a}, {"b", b}, {"x", x}}), rel(lhs, rhs), 1e-9 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x36707369ULL);  // 6psi6
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> a(4);
            cplx y;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("six_psi_six");
                for (auto& v : a) v = rng.log_annulus(1.25, 1.9);
                y = rng.log_annulus(0.6, 1.4);
                bool ok = theta_clearance(y * y, ctx) > 5e-2;
                cplx pa = a[0] * a[1] * a[2] * a[3];
                ok = ok && pos_lattice_clearance(ctx.q() / pa, ctx) > 2e-2;
                for (int j = 0; j < 4 && ok; ++j) {
                    ok = ok && pos_lattice_clearance(ctx.q() / (a[j] * y), ctx) > 2e-2 &&
                         pos_lattice_clearance(ctx.q() * y / a[j], ctx) > 2e-2;
                    for (int k = j + 1; k < 4 && ok; ++k)
                        ok = ok && pos_lattice_clearance(ctx.q() / (a[j] * a[k]), ctx) > 2e-2;
                }
                if (ok) break;
            }
            auto [lhs, rhs] = six_psi_six(a, y, ctx);
            rep.add("six_psi_six",
                    kv({{"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]}, {"a4", a[3]}, {"y", y}}),
                    rel(lhs, rhs), 1e-8 * ts);
        }
    }
}

// ---------------------------------------------------------------------------
// theorem1

void suite_theorem1(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 10;
    const double ts = cfg.tolerance_scale;
    const SeriesSpec specs[] = {standard_spec2(), standard_spec3()};

    for (const auto& spec : specs) {
        auto rng = stream(cfg, 0x7468310aULL + static_cast<std::uint64_t>(spec.r));
        const Annulus ann = psi_annulus(spec, ctx);
        const double lo = std::max(ann.inner * 4.0, 0.06);
        const std::string tag = "theorem1_r" + std::to_string(spec.r);
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 60) sampling_failed("theorem1 factorize");
                cplx x = rng.log_annulus(lo, 0.8);
                try {
                    FactorizationResult res = factorize(spec, x, ctx);
                    rep.add(tag + "_reconstruction", kv({{"x", x}}), res.residual, 1e-8 * ts);
                    cplx prod = x;
                    for (cplx aj : spec.a) prod *= aj;
                    for (const auto& rho : res.rhos) prod *= rho.rep;
                    rep.add(tag + "_product_relation", kv({{"x", x}}), std::abs(prod - 1.0),
                            1e-8 * ts);
                    break;
                } catch (const Error&) {
                    continue;  // degenerate draw (near branch point / probe failure)
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// theorem2

void suite_theorem2(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 10;
    const double ts = cfg.tolerance_scale;
    const SeriesSpec spec2 = standard_spec2();
    const double aq = std::abs(ctx.q());

    auto rng = stream(cfg, 0x74683262ULL);
    for (int i = 0; i < n; ++i) {
        int tries = 0;
        for (;; ++tries) {
            if (tries > 80) sampling_failed("theorem2");
            cplx x = rng.log_annulus(0.55 * aq, 0.85 * aq);
            cplx y = rng.log_annulus(0.5, 1.5);
            try {
                double res_arho = verify_A_rho_relation(spec2, x, ctx);
                double res_feq = verify_rho_functional_equation(spec2, x, ctx);

                RhoClass via_int = rho_via_integral(spec2, x, ctx);
                auto rhos = find_rhos(spec2, x, ctx);
                double mismatch = 1e9;
                for (const auto& rho : rhos) {
                    for (long k = -3; k <= 3; ++k) {
                        cplx qk = std::pow(ctx.q(), cplx(static_cast<double>(k), 0.0));
                        mismatch = std::min(mismatch, std::abs(via_int.rep / (rho.rep * qk) - 1.0));
                    }
                }
                double res_bailey = verify_bailey_symmetry(spec2, x, y, ctx);

                rep.add("A_rho_relation", kv({{"x", x}}), res_arho, 1e-7 * ts);
                rep.add("rho_functional_eq", kv({{"x", x}}), res_feq, 1e-7 * ts);
                rep.add("rho_integral_match", kv({{"x", x}}), mismatch, 1e-7 * ts);
                rep.add("bailey_symmetry", kv({{"x", x}, {"y", y}}), res_bailey, 1e-10 * ts);
                break;
            } catch (const Error&) {
                continue;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// vwp

cplx w5_star_explicit(const std::vector<cplx>& a, cplx y, const QContext& ctx) {
    const cplx sq = ctx.sqrt_q();
    cplx num = qpoch_inf(sq / a[0], ctx) * qpoch_inf(sq / a[1], ctx) * qpoch_inf(sq / a[2], ctx) *
               qpoch_inf(ctx.q() / (a[0] * a[1]), ctx) * qpoch_inf(ctx.q() / (a[0] * a[2]), ctx) *
               qpoch_inf(ctx.q() / (a[1] * a[2]), ctx);
    cplx qi = qpoch_inf(ctx.q(), ctx);
    return num / (qi * qi) * theta(y, ctx) * theta(-y, ctx) * theta(-y * sq, ctx);
}

bool vwp_y_ok(const std::vector<cplx>& a, cplx y, const QContext& ctx, bool need_y2 = false) {
    if (need_y2 && theta_clearance(y * y, ctx) < 5e-2) return false;
    for (cplx aj : a) {
        if (pos_lattice_clearance(ctx.q() / (aj * y), ctx) < 5e-2) return false;
        if (pos_lattice_clearance(ctx.q() * y / aj, ctx) < 5e-2) return false;
    }
    return true;
}

void suite_vwp(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 20;
    const double ts = cfg.tolerance_scale;

    {
        auto rng = stream(cfg, 0x77337733ULL);
        for (int i = 0; i < n; ++i) {
            cplx a1, y;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("w3_star_zero");
                // Keep the base ratio q^{-1/2}/a1 well inside the unit disc.
                const double s = 1.0 / std::sqrt(std::abs(ctx.q()));
                a1 = rng.log_annulus(1.3 * s, 2.1 * s);
                y = rng.log_annulus(0.6, 1.4);
                if (vwp_y_ok({a1}, y, ctx)) break;
            }
            SeriesValue v = w_star_full(WSpec(3, {a1}), y, ctx);
            rep.add("w3_star_zero", kv({{"a1", a1}, {"y", y}}),
                    std::abs(v.value) / (v.scale + kTiny), 1e-10 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x77347734ULL);
        for (int i = 0; i < n; ++i) {
            cplx a1, a2, y;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("w4_star_zero");
                a1 = rng.log_annulus(1.15, 1.7);
                a2 = rng.log_annulus(1.15, 1.7);
                y = rng.log_annulus(0.6, 1.4);
                if (std::abs(a1 * a2) > 1.4 && vwp_y_ok({a1, a2}, y, ctx)) break;
            }
            SeriesValue v = w_star_full(WSpec(4, {a1, a2}), y, ctx);
            rep.add("w4_star_zero", kv({{"a1", a1}, {"a2", a2}, {"y", y}}),
                    std::abs(v.value) / (v.scale + kTiny), 1e-10 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x77367736ULL);
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> a(4);
            cplx y1, y2;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("w6_theta_ratio");
                for (auto& v : a) v = rng.log_annulus(1.2, 1.9);
                y1 = rng.log_annulus(0.6, 1.4);
                y2 = rng.log_annulus(0.6, 1.4);
                if (vwp_y_ok(a, y1, ctx, true) && vwp_y_ok(a, y2, ctx, true)) break;
            }
            WSpec w6(6, a);
            cplx v1 = w_star(w6, y1, ctx) / theta(y1 * y1, ctx);
            cplx v2 = w_star(w6, y2, ctx) / theta(y2 * y2, ctx);
            cplx c = 1.0;
            for (int j = 0; j < 4; ++j)
                for (int k = j + 1; k < 4; ++k) c *= qpoch_inf(ctx.q() / (a[j] * a[k]), ctx);
            std::string ins =
                kv({{"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]}, {"a4", a[3]}, {"y1", y1}, {"y2", y2}});
            rep.add("w6_theta_ratio", ins, rel(v1, v2), 1e-9 * ts);
            rep.add("w6_product", ins, rel(v1, c), 1e-9 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x73717274ULL);  // sqrt-q chain + explicit 5W5
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> a(3);
            cplx y;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("w6_to_w5");
                for (auto& v : a) v = rng.log_annulus(1.3, 2.0);
                y = rng.log_annulus(0.6, 1.4);
                std::vector<cplx> a4 = a;
                a4.push_back(ctx.sqrt_q());
                if (vwp_y_ok(a4, y, ctx) && theta_clearance(y * ctx.sqrt_q(), ctx) > 5e-2) break;
            }
            std::vector<cplx> a4 = a;
            a4.push_back(ctx.sqrt_q());
            SeriesValue lhs6 = w_star_full(WSpec(6, a4), y, ctx);
            SeriesValue w5 = w_star_full(WSpec(5, a), y, ctx);
            const cplx fac = theta(y * ctx.sqrt_q(), ctx) / qpoch_inf(ctx.q(), ctx);
            const cplx rhs6 = fac * w5.value;
            const double sc6 = lhs6.scale + std::abs(fac) * w5.scale;
            std::string ins = kv({{"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]}, {"y", y}});
            rep.add("w6_to_w5_sqrtq", ins, std::abs(lhs6.value - rhs6) / (sc6 + kTiny),
                    1e-9 * ts);
            const cplx w5e = w5_star_explicit(a, y, ctx);
            rep.add("w5_star_explicit", ins,
                    std::abs(w5.value - w5e) / (w5.scale + std::abs(w5e) + kTiny), 1e-9 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x77387738ULL);
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> a(6);
            cplx y0, y1;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("w8_reconstruction");
                for (auto& v : a) v = rng.log_annulus(1.1, 1.55);
                y0 = rng.log_annulus(0.6, 1.4);
                y1 = rng.log_annulus(0.6, 1.4);
                if (vwp_y_ok(a, y0, ctx, true) && vwp_y_ok(a, y1, ctx, true) &&
                    theta_clearance(y0 / y1, ctx) > 2e-2)
                    break;
            }
            WSpec w8(8, a);
            // Locate the non-trivial zero rho of w8* (the factorization reads
            // A theta(y^2) theta(y/rho) theta(q rho y)); Newton from a seed
            // grid, keeping roots away from the theta(y^2) lattice.
            auto g = [&](cplx y) { return w_star(w8, y, ctx); };
            double scale = w_star_full(w8, y0, ctx).scale;
            cplx rho = 0.0;
            bool found = false;
            for (double r0 : {0.95, 0.8, 0.65, 0.55}) {
                for (int k = 0; k < 16 && !found; ++k) {
                    double phi = 2.0 * M_PI * (k + 0.5) / 16.0;
                    cplx z = cplx(r0 * std::cos(phi), r0 * std::sin(phi));
                    for (int it = 0; it < 40; ++it) {
                        cplx fz = g(z);
                        double h = 1e-7 * std::abs(z);
                        cplx d = (g(z + h) - g(z - h)) / (2.0 * h);
                        if (std::abs(d) < kTiny) break;
                        cplx step = fz / d;
                        z -= step;
                        if (std::abs(step) < 1e-13 * std::abs(z)) break;
                    }
                    if (std::abs(g(z)) < 1e-9 * scale && theta_clearance(z * z, ctx) > 5e-2) {
                        rho = RhoClass::canonical(z, 1.0, ctx).rep;
                        found = true;
                    }
                }
                if (found) break;
            }
            std::string ins = kv({{"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]},
                                  {"a4", a[3]}, {"a5", a[4]}, {"a6", a[5]}, {"y", y1}});
            if (!found) {
                rep.add("w8_reconstruction", ins, 1.0, 1e-8 * ts);
                continue;
            }
            cplx A = w_star(w8, y0, ctx) /
                     (theta(y0 * y0, ctx) * theta(y0 / rho, ctx) * theta(ctx.q() * rho * y0, ctx));
            cplx lhs = w_star(w8, y1, ctx);
            cplx rhs = A * theta(y1 * y1, ctx) * theta(y1 / rho, ctx) * theta(ctx.q() * rho * y1, ctx);
            rep.add("w8_reconstruction", ins, rel_sym(lhs, rhs), 1e-8 * ts);
        }
    }
}

// ---------------------------------------------------------------------------
// slater

std::vector<cplx> sample_nodes(SplitMix64& rng, int count, const QContext& ctx) {
    std::vector<cplx> zs(count);
    for (int tries = 0; tries < 400; ++tries) {
        for (auto& z : zs) z = rng.log_annulus(0.6, 1.5);
        bool ok = true;
        for (int j = 0; j < count && ok; ++j)
            for (int k = j + 1; k < count && ok; ++k)
                ok = theta_clearance(zs[j] / zs[k], ctx) > 3e-2;
        if (ok) return zs;
    }
    sampling_failed("node set");
}

void suite_slater(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 20;
    const double ts = cfg.tolerance_scale;

    {
        auto rng = stream(cfg, 0x736c3272ULL);
        SeriesSpec spec2 = standard_spec2();
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 80) sampling_failed("slater_general_r2");
                cplx x = rng.log_annulus(0.08, 0.75);
                cplx y = rng.log_annulus(0.6, 1.4);
                auto zs = sample_nodes(rng, 2, ctx);
                try {
                    double res = slater_general_check(spec2, x, y, zs, ctx);
                    rep.add("slater_general_r2",
                            kv({{"x", x}, {"y", y}, {"z1", zs[0]}, {"z2", zs[1]}}), res, 1e-9 * ts);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
    {
        auto rng = stream(cfg, 0x736c3872ULL);
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 80) sampling_failed("slater_vwp_even_r8");
                std::vector<cplx> a(6);
                for (auto& v : a) v = rng.log_annulus(1.1, 1.55);
                cplx y = rng.log_annulus(0.6, 1.4);
                auto zs = sample_nodes(rng, 2, ctx);
                if (!vwp_y_ok(a, y, ctx, true)) continue;
                bool zok = true;
                for (cplx z : zs) zok = zok && vwp_y_ok(a, z, ctx, true);
                if (!zok) continue;
                try {
                    double res = slater_vwp_check(WSpec(8, a), y, zs, ctx);
                    rep.add("slater_vwp_even_r8",
                            kv({{"y", y}, {"z1", zs[0]}, {"z2", zs[1]}}), res, 1e-8 * ts);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
    {
        auto rng = stream(cfg, 0x736c3572ULL);
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 80) sampling_failed("slater_vwp_odd_r5");
                std::vector<cplx> a(3);
                for (auto& v : a) v = rng.log_annulus(1.3, 2.0);
                cplx y = rng.log_annulus(0.6, 1.4);
                auto zs = sample_nodes(rng, 1, ctx);
                if (!vwp_y_ok(a, y, ctx, true) || !vwp_y_ok(a, zs[0], ctx, true)) continue;
                if (theta_clearance(y * ctx.sqrt_q(), ctx) < 3e-2) continue;
                if (theta_clearance(zs[0] * ctx.sqrt_q(), ctx) < 3e-2) continue;
                try {
                    double res = slater_vwp_check(WSpec(5, a), y, zs, ctx);
                    rep.add("slater_vwp_odd_r5", kv({{"y", y}, {"z1", zs[0]}}), res, 1e-8 * ts);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// wronskian

// Coefficient functions of the r-term contiguous recurrence satisfied by
// f(x) = theta(x/y) psi*(x, y): cs[j](x) =
// (-1)^j q^{j(j-1)/2} x^j lambda_j(x) (x)_j / (B/(A x q^j))_j.
std::vector<SampledFunction> recurrence_coeffs(const SeriesSpec& spec, const QContext& ctx) {
    std::vector<SampledFunction> cs;
    const cplx ratio = spec.prod_b() / spec.prod_a();
    for (int j = 0; j <= spec.r; ++j) {
        cs.push_back([&spec, &ctx, ratio, j](cplx x) {
            LambdaCoeffs lc = lambda_coeffs(spec, x, ctx);
            cplx qj = std::pow(ctx.q(), cplx(static_cast<double>(j), 0.0));
            cplx sign = (j % 2 == 0) ? 1.0 : -1.0;
            cplx qtri = std::pow(ctx.q(), cplx(0.5 * j * (j - 1), 0.0));
            return sign * qtri * std::pow(x, cplx(static_cast<double>(j), 0.0)) * lc.lambdas[j] *
                   qpoch(x, j, ctx) / qpoch(ratio / (x * qj), j, ctx);
        });
    }
    return cs;
}

void suite_wronskian(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 50;
    const int m = std::min(n, 10);
    const double ts = cfg.tolerance_scale;
    const SeriesSpec spec2 = standard_spec2();
    const SeriesSpec spec3 = standard_spec3();

    {
        auto rng = stream(cfg, 0x77726f6eULL);
        for (int i = 0; i < n; ++i) {
            cplx x, y, z;
            int tries = 0;
            for (;; ++tries) {
                if (tries > 400) sampling_failed("wronskian2_product");
                x = rng.log_annulus(0.08, 0.7);
                y = rng.log_annulus(0.5, 1.5);
                z = rng.log_annulus(0.5, 1.5);
                if (theta_clearance(y / z, ctx) > 2e-2 && theta_clearance(x / y, ctx) > 2e-2 &&
                    theta_clearance(x / z, ctx) > 2e-2)
                    break;
            }
            rep.add("wronskian2_product", kv({{"x", x}, {"y", y}, {"z", z}}),
                    wronskian2_residual(spec2, x, y, z, ctx), 1e-9 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x67757374ULL);
        for (int i = 0; i < m; ++i) {
            for (const SeriesSpec* spec : {&spec2, &spec3}) {
                int tries = 0;
                for (;; ++tries) {
                    if (tries > 200) sampling_failed("gustafson_ratio");
                    cplx x = rng.log_annulus(0.05, spec->r == 2 ? 0.7 : 0.55);
                    auto ys = sample_nodes(rng, spec->r, ctx);
                    try {
                        double scale = 0.0;
                        cplx ratio = gustafson_ratio(*spec, x, ys, ctx, &scale);
                        cplx val = gustafson_ratio_value(*spec, ctx);
                        rep.add("gustafson_ratio_r" + std::to_string(spec->r), kv({{"x", x}}),
                                std::abs(ratio - val) / (scale + std::abs(val) + kTiny),
                                1e-8 * ts);
                        break;
                    } catch (const Error&) {
                        continue;
                    }
                }
            }
        }
    }
    {
        auto rng = stream(cfg, 0x73746570ULL);
        for (int i = 0; i < m; ++i) {
            for (const SeriesSpec* spec : {&spec2, &spec3}) {
                int tries = 0;
                for (;; ++tries) {
                    if (tries > 200) sampling_failed("qwronskian_step");
                    cplx x = rng.log_annulus(spec->r == 2 ? 0.15 : 0.1, spec->r == 2 ? 0.7 : 0.55);
                    // Separated node moduli keep the Wronskian determinant
                    // well conditioned.
                    static const double bands[3] = {0.55, 1.0, 1.8};
                    std::vector<cplx> ys(spec->r);
                    for (int bi = 0; bi < spec->r; ++bi)
                        ys[bi] = rng.log_annulus(0.92 * bands[bi], 1.08 * bands[bi]);
                    bool ok = true;
                    for (cplx y : ys)
                        for (int j = 0; j <= spec->r && ok; ++j) {
                            cplx qj = std::pow(ctx.q(), cplx(static_cast<double>(j), 0.0));
                            ok = theta_clearance(qj * x / y, ctx) > 2e-2;
                        }
                    if (!ok) continue;
                    std::vector<SampledFunction> fs;
                    for (cplx y : ys)
                        fs.push_back([spec, &ctx, y](cplx xx) {
                            return theta(xx / y, ctx) * psi_star(*spec, xx, y, ctx);
                        });
                    auto cs = recurrence_coeffs(*spec, ctx);
                    try {
                        double res = qwronskian_step_check(fs, cs, x, ctx);
                        rep.add("qwronskian_step_n" + std::to_string(spec->r), kv({{"x", x}}), res,
                                1e-9 * ts);
                        break;
                    } catch (const Error&) {
                        continue;
                    }
                }
            }
        }
    }
    {
        auto rng = stream(cfg, 0x6c696e72ULL);
        SeriesSpec spec1({2.5}, {0.1});
        const SeriesSpec* specs[] = {&spec1, &spec2, &spec3};
        const double tols[] = {1e-10, 1e-9, 1e-8};
        for (int i = 0; i < m; ++i) {
            for (int s = 0; s < 3; ++s) {
                const SeriesSpec& spec = *specs[s];
                int tries = 0;
                for (;; ++tries) {
                    if (tries > 200) sampling_failed("linear_relation");
                    Annulus ann = psi_annulus(spec, ctx);
                    double lo = std::max(0.08, ann.inner * 1.2 / std::pow(std::abs(ctx.q()),
                                                                          spec.r));
                    if (lo > 0.6) sampling_failed("linear_relation band");
                    cplx x = rng.log_annulus(lo, 0.7);
                    cplx y = rng.log_annulus(0.5, 1.5);
                    try {
                        double res = psi_star_linear_relation_residual(spec, x, y, ctx);
                        rep.add("linear_relation_r" + std::to_string(spec.r),
                                kv({{"x", x}, {"y", y}}), res, tols[s] * ts);
                        break;
                    } catch (const Error&) {
                        continue;
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// elliptic

void suite_elliptic(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 20;
    const double ts = cfg.tolerance_scale;
    const InversionConstants consts = InversionConstants::make(ctx);

    rep.add("inversion_k1k2", kv({{"q", ctx.q()}}), std::abs(consts.k1 * consts.k2 - 1.0),
            1e-12 * ts);

    auto rng = stream(cfg, 0x656c6c69ULL);
    for (int i = 0; i < n; ++i) {
        int tries = 0;
        for (;; ++tries) {
            if (tries > 200) sampling_failed("elliptic roundtrip");
            cplx y = rng.log_annulus(0.1, 3.0);
            try {
                cplx x = jacobi_inverse(y, ctx);
                rep.add("inversion_roundtrip", kv({{"y", y}}), rel(theta_quotient(x, ctx), y),
                        1e-8 * ts);
                double worst = 0.0;
                for (int e = -1; e <= 1; ++e) {
                    cplx qe = std::pow(ctx.q(), cplx(static_cast<double>(e), 0.0));
                    worst = std::max(worst, rel(theta_quotient(qe * x, ctx), y));
                    worst = std::max(worst, rel(theta_quotient(qe / x, ctx), y));
                }
                rep.add("inversion_ambiguity_set", kv({{"y", y}}), worst, 1e-9 * ts);
                break;
            } catch (const Error&) {
                continue;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// thetaspaces

void suite_thetaspaces(const SuiteConfig& cfg, const QContext& ctx, Report& rep) {
    const int n = cfg.samples > 0 ? cfg.samples : 10;
    const double ts = cfg.tolerance_scale;
    const SeriesSpec spec2 = standard_spec2();

    auto sample_xs = [&](SplitMix64& rng, int count, const std::vector<cplx>& avoid_lattice) {
        std::vector<cplx> xs(count);
        for (int tries = 0; tries < 400; ++tries) {
            for (auto& x : xs) x = rng.log_annulus(0.4, 1.8);
            bool ok = true;
            for (cplx x : xs)
                for (cplx v : avoid_lattice)
                    ok = ok && theta_clearance(x / v, ctx) > 2e-2;
            if (ok) return xs;
        }
        sampling_failed("sample points");
    };

    {
        auto rng = stream(cfg, 0x74686d62ULL);  // memberships
        for (int i = 0; i < n; ++i) {
            cplx rho = rng.log_annulus(0.5, 1.5);
            auto xs = sample_xs(rng, 8, {rho});
            SampledFunction f = [&ctx, rho](cplx x) { return theta(x / rho, ctx); };
            rep.add("theta1_membership", kv({{"rho", rho}}),
                    theta_space_residual(f, {1, 1.0 / rho}, xs, ctx), 1e-10 * ts);

            cplx x0 = rng.log_annulus(0.08, 0.7);
            auto ys = sample_xs(rng, 6, {});
            SampledFunction g = [&spec2, &ctx, x0](cplx y) { return psi_star(spec2, x0, y, ctx); };
            rep.add("psi_star_membership", kv({{"x", x0}}),
                    theta_space_residual(g, {2, spec2.prod_a() * x0}, ys, ctx), 1e-9 * ts);
        }
    }
    {
        auto rng = stream(cfg, 0x63617264ULL);  // cardinal property
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 80) sampling_failed("cardinal property");
                auto zs = sample_nodes(rng, 3, ctx);
                cplx c = rng.log_annulus(0.5, 1.5);
                try {
                    double worst = 0.0;
                    for (int j = 0; j < 3; ++j)
                        for (int k = 0; k < 3; ++k) {
                            cplx v = vartheta_basis(j, zs, c, zs[k], ctx);
                            worst = std::max(worst, std::abs(v - (j == k ? 1.0 : 0.0)));
                        }
                    rep.add("cardinal_property", kv({{"z1", zs[0]}, {"z2", zs[1]}, {"z3", zs[2]}}),
                            worst, 1e-10 * ts);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
    {
        auto rng = stream(cfg, 0x6f6d6567ULL);  // omega expansions
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 80) sampling_failed("omega expansion");
                cplx c = rng.log_annulus(0.5, 1.5);
                cplx alpha = rng.log_annulus(0.6, 1.4);
                auto zs = sample_nodes(rng, 2, ctx);
                cplx xf = rng.log_annulus(0.6, 1.4);
                if (theta_clearance(c * zs[0] * zs[1], ctx) < 5e-2) continue;
                if (theta_clearance(xf / alpha, ctx) < 3e-2) continue;
                if (theta_clearance(c * alpha * xf, ctx) < 3e-2) continue;
                SampledFunction f = [&ctx, c, alpha](cplx x) {
                    return theta(x / alpha, ctx) * theta(c * alpha * x, ctx);
                };
                try {
                    cplx approx = 0.0;
                    double ascale = 0.0;
                    for (int j = 0; j < 2; ++j) {
                        const cplx term = f(zs[j]) * omega_basis(j, zs, c, xf, ctx);
                        approx += term;
                        ascale += std::abs(term);
                    }
                    rep.add("omega_expansion", kv({{"c", c}, {"alpha", alpha}, {"x", xf}}),
                            std::abs(f(xf) - approx) / (ascale + std::abs(f(xf)) + kTiny),
                            1e-10 * ts);

                    // Anti-symmetric part: s(x) = x theta(c x^2) satisfies
                    // s(q/(cx)) = -s(x).
                    cplx s1 = xf * theta(c * xf * xf, ctx);
                    cplx xr = ctx.q() / (c * xf);
                    cplx s2 = xr * theta(c * xr * xr, ctx);
                    rep.add("omega_odd_antisymmetry", kv({{"c", c}, {"x", xf}}), rel_sym(s1, -s2),
                            1e-10 * ts);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
    {
        auto rng = stream(cfg, 0x70737065ULL);  // psi* product in Omega_4
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 80) sampling_failed("psi_star omega expansion");
                cplx x0 = rng.log_annulus(0.08, 0.7);
                cplx c = spec2.prod_a() * x0;
                auto zs = sample_nodes(rng, 3, ctx);
                cplx yf = rng.log_annulus(0.6, 1.4);
                bool clear = true;
                for (int j = 0; j < 3 && clear; ++j)
                    for (int k = j + 1; k < 3 && clear; ++k)
                        clear = theta_clearance(c * zs[j] * zs[k], ctx) > 5e-2 &&
                                theta_clearance(zs[j] / zs[k], ctx) > 5e-2;
                if (!clear) continue;
                SampledFunction h = [&spec2, &ctx, x0, c](cplx y) {
                    return psi_star(spec2, x0, y, ctx) * psi_star(spec2, x0, ctx.q() / (c * y), ctx);
                };
                try {
                    cplx target = h(yf);
                    cplx approx = 0.0;
                    double scale = std::abs(target);
                    for (int j = 0; j < 3; ++j) {
                        cplx term = h(zs[j]) * omega_basis(j, zs, c, yf, ctx);
                        approx += term;
                        scale += std::abs(term);
                    }
                    rep.add("psi_star_product_expansion", kv({{"x", x0}, {"y", yf}}),
                            std::abs(target - approx) / (scale + kTiny), 1e-8 * ts);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
    {
        auto rng = stream(cfg, 0x64657472ULL);  // det ratio certificates
        for (int i = 0; i < n; ++i) {
            int tries = 0;
            for (;; ++tries) {
                if (tries > 80) sampling_failed("det ratio");
                cplx c = rng.log_annulus(0.5, 1.5);
                cplx a1 = rng.log_annulus(0.6, 1.4);
                cplx a2 = rng.log_annulus(0.6, 1.4);
                if (theta_clearance(a1 / a2, ctx) < 3e-2) continue;
                auto xs1 = sample_nodes(rng, 2, ctx);
                auto xs2 = sample_nodes(rng, 2, ctx);
                if (theta_clearance(c * xs1[0] * xs1[1], ctx) < 5e-2 ||
                    theta_clearance(c * xs2[0] * xs2[1], ctx) < 5e-2)
                    continue;
                std::vector<SampledFunction> fs = {
                    [&ctx, c, a1](cplx x) { return theta(x / a1, ctx) * theta(c * a1 * x, ctx); },
                    [&ctx, c, a2](cplx x) { return theta(x / a2, ctx) * theta(c * a2 * x, ctx); }};
                cplx x0 = rng.log_annulus(0.08, 0.7);
                cplx cp = spec2.prod_a() * x0;
                cplx beta = rng.log_annulus(0.6, 1.4);
                if (theta_clearance(cp * xs1[0] * xs1[1], ctx) < 5e-2 ||
                    theta_clearance(cp * xs2[0] * xs2[1], ctx) < 5e-2)
                    continue;
                try {
                    rep.add("theta_det_ratio", kv({{"c", c}, {"a1", a1}, {"a2", a2}}),
                            theta_det_ratio(fs, {xs1, xs2}, c, ctx), 1e-10 * ts);

                    std::vector<SampledFunction> gs = {
                        [&spec2, &ctx, x0](cplx y) { return psi_star(spec2, x0, y, ctx); },
                        [&ctx, cp, beta](cplx y) {
                            return theta(y / beta, ctx) * theta(cp * beta * y, ctx);
                        }};
                    rep.add("psi_star_det_ratio", kv({{"x", x0}, {"beta", beta}}),
                            theta_det_ratio(gs, {xs1, xs2}, cp, ctx), 1e-8 * ts);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
    {
        // Dimension certificates: samples of n+1 products of the Theta_n(c)
        // shape must be numerically rank n; n of them must be well-conditioned.
        auto rng = stream(cfg, 0x64696d73ULL);
        for (int dim : {2, 3}) {
            cplx c = rng.log_annulus(0.7, 1.3);
            std::vector<SampledFunction> elems;
            for (int mIdx = 0; mIdx <= dim; ++mIdx) {
                cplx alpha = rng.log_annulus(0.55, 1.45);
                if (dim == 2) {
                    elems.push_back([&ctx, c, alpha](cplx x) {
                        return theta(x / alpha, ctx) * theta(c * alpha * x, ctx);
                    });
                } else {
                    cplx beta = rng.log_annulus(0.55, 1.45);
                    elems.push_back([&ctx, c, alpha, beta](cplx x) {
                        return theta(x / alpha, ctx) * theta(x / beta, ctx) *
                               theta(c * alpha * beta * x, ctx);
                    });
                }
            }
            int rows = 12;
            std::vector<cplx> pts(rows);
            for (auto& p : pts) p = rng.log_annulus(0.5, 1.6);
            auto sigma_ratio = [&](int cols) {
                Eigen::MatrixXcd M(rows, cols);
                for (int ri = 0; ri < rows; ++ri)
                    for (int ci = 0; ci < cols; ++ci) M(ri, ci) = elems[ci](pts[ri]);
                // Row normalization keeps the conditioning test about the span,
                // not about theta magnitudes.
                for (int ri = 0; ri < rows; ++ri) {
                    double nrm = M.row(ri).norm();
                    if (nrm > 0) M.row(ri) /= nrm;
                }
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
                const auto& s = svd.singularValues();
                return s(cols - 1) / s(0);
            };
            std::string tag = std::to_string(dim);
            rep.add("thetaspace_rank_gap_n" + tag, kv({{"c", c}}), sigma_ratio(dim + 1), 1e-8 * ts);
            double complete = sigma_ratio(dim);
            rep.add("thetaspace_rank_complete_n" + tag, kv({{"c", c}}), 1e-12 / (complete + kTiny),
                    1e-4 * ts);
        }
    }
}

}  // namespace

Suite suite_from_name(const std::string& name) {
    if (name == "classical") return Suite::classical;
    if (name == "theorem1") return Suite::theorem1;
    if (name == "theorem2") return Suite::theorem2;
    if (name == "vwp") return Suite::vwp;
    if (name == "slater") return Suite::slater;
    if (name == "wronskian") return Suite::wronskian;
    if (name == "elliptic") return Suite::elliptic;
    if (name == "thetaspaces") return Suite::thetaspaces;
    if (name == "all") return Suite::all;
    throw DomainError("unknown suite: " + name);
}

std::string suite_name(Suite suite) {
    switch (suite) {
        case Suite::classical: return "classical";
        case Suite::theorem1: return "theorem1";
        case Suite::theorem2: return "theorem2";
        case Suite::vwp: return "vwp";
        case Suite::slater: return "slater";
        case Suite::wronskian: return "wronskian";
        case Suite::elliptic: return "elliptic";
        case Suite::thetaspaces: return "thetaspaces";
        case Suite::all: return "all";
    }
    return "?";
}

Report run_suite(const SuiteConfig& config) {
    QContext ctx(config.q);
    if (config.max_terms > 0) ctx = QContext(config.q, 1e-14, config.max_terms);

    Report rep;
    rep.suite = suite_name(config.suite);
    rep.q = config.q;
    rep.seed = config.seed;
    rep.samples = config.samples;
    rep.tolerance_scale = config.tolerance_scale;

    auto dispatch = [&](Suite s) {
        switch (s) {
            case Suite::classical: suite_classical(config, ctx, rep); break;
            case Suite::theorem1: suite_theorem1(config, ctx, rep); break;
            case Suite::theorem2: suite_theorem2(config, ctx, rep); break;
            case Suite::vwp: suite_vwp(config, ctx, rep); break;
            case Suite::slater: suite_slater(config, ctx, rep); break;
            case Suite::wronskian: suite_wronskian(config, ctx, rep); break;
            case Suite::elliptic: suite_elliptic(config, ctx, rep); break;
            case Suite::thetaspaces: suite_thetaspaces(config, ctx, rep); break;
            case Suite::all: break;
        }
    };
    if (config.suite == Suite::all) {
        for (Suite s : kAllSuites) dispatch(s);
    } else {
        dispatch(config.suite);
    }
    return rep;
}

}  // namespace qs
