#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qs/classical.hpp"
#include "qs/elliptic.hpp"
#include "qs/errors.hpp"
#include "qs/factorize.hpp"
#include "qs/report.hpp"
#include "qs/series.hpp"
#include "qs/suites.hpp"

namespace {

using qs::cplx;

int env_max_terms() {
    const char* v = std::getenv("QS_MAX_TERMS");
    if (!v) return 0;
    int n = std::atoi(v);
    return n > 0 ? n : 0;
}

qs::QContext make_context(cplx q) {
    int mt = env_max_terms();
    if (mt > 0) return qs::QContext(q, 1e-14, mt);
    return qs::QContext(q);
}

struct ArityError {
    std::string message;
};

cplx arg_at(const std::vector<cplx>& args, std::size_t i) {
    if (i >= args.size()) throw ArityError{"too few arguments"};
    return args[i];
}

long int_at(const std::vector<cplx>& args, std::size_t i) {
    cplx v = arg_at(args, i);
    long n = std::lround(v.real());
    if (v.imag() != 0.0 || std::abs(v.real() - static_cast<double>(n)) > 1e-12)
        throw ArityError{"expected an integer argument"};
    return n;
}

void expect_arity(const std::vector<cplx>& args, std::size_t n, const char* name) {
    if (args.size() != n)
        throw ArityError{std::string(name) + " expects " + std::to_string(n) + " arguments"};
}

// Registered operations for `qs eval`. Throws ArityError (exit 2) on shape
// problems and qs::Error (exit 3) on domain problems.
cplx eval_op(const std::string& name, const std::vector<cplx>& args, const qs::QContext& ctx) {
    if (name == "theta") {
        expect_arity(args, 1, "theta");
        return qs::theta(args[0], ctx);
    }
    if (name == "qpoch") {
        expect_arity(args, 2, "qpoch");
        return qs::qpoch(args[0], int_at(args, 1), ctx);
    }
    if (name == "qpoch_inf") {
        expect_arity(args, 1, "qpoch_inf");
        return qs::qpoch_inf(args[0], ctx);
    }
    if (name == "one_psi_one_rhs") {
        expect_arity(args, 3, "one_psi_one_rhs");
        return qs::one_psi_one_rhs(args[0], args[1], args[2], ctx);
    }
    if (name == "theta_quotient") {
        expect_arity(args, 1, "theta_quotient");
        return qs::theta_quotient(args[0], ctx);
    }
    if (name == "jacobi_inverse") {
        expect_arity(args, 1, "jacobi_inverse");
        return qs::jacobi_inverse(args[0], ctx);
    }
    if (name == "psi" || name == "psi_star" || name == "psi_star_x1") {
        long r = int_at(args, 0);
        if (r < 1 || r > 16) throw ArityError{"r out of range"};
        std::size_t want = 1 + 2 * static_cast<std::size_t>(r) + (name == "psi_star_x1" ? 1 : 2);
        if (args.size() != want) throw ArityError{name + " expects r, a_1..a_r, b_1..b_r, then " +
                                                  (name == "psi_star_x1" ? "y" : "x, y")};
        std::vector<cplx> a(args.begin() + 1, args.begin() + 1 + r);
        std::vector<cplx> b(args.begin() + 1 + r, args.begin() + 1 + 2 * r);
        qs::SeriesSpec spec(a, b);
        if (name == "psi_star_x1") return qs::psi_star_x1(spec, args[1 + 2 * r], ctx);
        cplx x = args[1 + 2 * r], y = args[2 + 2 * r];
        return name == "psi" ? qs::psi(spec, x, y, ctx) : qs::psi_star(spec, x, y, ctx);
    }
    if (name == "w_series" || name == "w_star") {
        long r = int_at(args, 0);
        if (r < 3 || r > 16) throw ArityError{"r out of range"};
        std::size_t want = 1 + static_cast<std::size_t>(r - 2) + 1;
        if (args.size() != want) throw ArityError{name + " expects r, a_1..a_{r-2}, y"};
        std::vector<cplx> a(args.begin() + 1, args.begin() + r - 1);
        qs::WSpec wspec(static_cast<int>(r), a);
        return name == "w_series" ? qs::w_series(wspec, args[r - 1], ctx)
                                  : qs::w_star(wspec, args[r - 1], ctx);
    }
    throw ArityError{"unknown operation: " + name};
}

std::vector<cplx> parse_list(const std::string& text) {
    std::vector<cplx> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!tok.empty()) out.push_back(qs::parse_complex(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int cmd_eval(const std::string& name, const std::vector<std::string>& raw_args,
             const std::string& q_text) {
    std::vector<cplx> args;
    try {
        for (const auto& t : raw_args) args.push_back(qs::parse_complex(t));
    } catch (const qs::Error&) {
        std::cerr << "error: arguments must be complex literals of the form a+bi\n";
        return 2;
    }
    try {
        qs::QContext ctx = make_context(qs::parse_complex(q_text));
        std::cout << qs::format_complex(eval_op(name, args, ctx)) << "\n";
        return 0;
    } catch (const ArityError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 2;
    } catch (const qs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

int cmd_verify(const std::string& suite_text, const std::string& q_text, std::uint64_t seed,
               int samples, double tolerance_scale, const std::string& out_path) {
    qs::SuiteConfig cfg;
    try {
        cfg.suite = qs::suite_from_name(suite_text);
        cfg.q = qs::parse_complex(q_text);
        cfg.seed = seed;
        cfg.samples = samples;
        if (samples < 0) throw qs::DomainError("samples must be >= 1");
        if (!(tolerance_scale > 0.0)) throw qs::DomainError("tolerance-scale must be positive");
        cfg.tolerance_scale = tolerance_scale;
        cfg.max_terms = env_max_terms();
    } catch (const qs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    try {
        qs::Report rep = qs::run_suite(cfg);
        std::string text = rep.to_text();
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open " << out_path << "\n";
                return 3;
            }
            out << text;
        } else {
            std::cout << text;
        }
        std::cout << rep.summary() << "\n";
        return rep.all_pass() ? 0 : 1;
    } catch (const qs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

int cmd_factorize(int r, const std::string& a_text, const std::string& b_text,
                  const std::string& x_text, const std::string& q_text) {
    try {
        std::vector<cplx> a = parse_list(a_text);
        std::vector<cplx> b = parse_list(b_text);
        if (static_cast<int>(a.size()) != r || static_cast<int>(b.size()) != r)
            throw qs::DomainError("--a and --b must each list r values");
        qs::SeriesSpec spec(a, b);
        cplx x = qs::parse_complex(x_text);
        qs::QContext ctx = make_context(qs::parse_complex(q_text));

        qs::FactorizationResult res;
        if (std::abs(x - 1.0) < 1e-12) {
            // The series itself diverges on |x| = 1; the boundary value has a
            // closed product form with zero classes 1/a_j.
            res.x = x;
            const cplx anchor = (r == 2) ? std::sqrt(spec.prod_a() * x) : cplx(1.0);
            for (cplx aj : a) res.rhos.push_back(qs::RhoClass::canonical(1.0 / aj, anchor, ctx));
            std::sort(res.rhos.begin(), res.rhos.end(),
                      [](const qs::RhoClass& u, const qs::RhoClass& v) {
                          if (u.rep.real() != v.rep.real()) return u.rep.real() < v.rep.real();
                          return u.rep.imag() < v.rep.imag();
                      });
            // Product relation: force the q-power residue of prod rho_j * prod
            // a_j * x onto the last representative, as in the generic path.
            cplx prod = spec.prod_a() * x;
            for (const auto& rho : res.rhos) prod *= rho.rep;
            const long k =
                std::lround(std::log(std::abs(prod)) / std::log(ctx.abs_q()));
            res.rhos.back().rep /= std::pow(ctx.q(), static_cast<double>(k));
            res.q_exponent = k;
            // Extract A at a probe point away from the zero classes, then
            // verify the reconstruction at independent points.
            {
                const cplx y0 = std::exp(cplx(0.05, 0.9));
                cplx den = 1.0;
                for (const auto& rho : res.rhos) den *= qs::theta(y0 / rho.rep, ctx);
                res.A = qs::psi_star_x1(spec, y0, ctx) / den;
            }
            double worst = 0.0;
            for (int k = 0; k < 8; ++k) {
                cplx y = std::exp(cplx(0.13 * k, 0.71 * k + 0.4));
                cplx recon = res.A;
                for (const auto& rho : res.rhos) recon *= qs::theta(y / rho.rep, ctx);
                cplx direct = qs::psi_star_x1(spec, y, ctx);
                worst = std::max(worst, std::abs(recon - direct) /
                                            (0.5 * (std::abs(recon) + std::abs(direct)) + 1e-300));
            }
            res.residual = worst;
        } else {
            res = qs::factorize(spec, x, ctx);
        }
        std::cout << "A = " << qs::format_complex(res.A) << "\n";
        for (std::size_t j = 0; j < res.rhos.size(); ++j)
            std::cout << "rho_" << (j + 1) << " = " << qs::format_complex(res.rhos[j].rep) << "\n";
        std::cout << "residual = " << res.residual << "\n";
        std::cout << "q_exponent = " << res.q_exponent << "\n";
        return 0;
    } catch (const qs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilateral q-series evaluation and verification"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "evaluate a registered operation");
    std::string eval_name, eval_q = "0.5";
    std::vector<std::string> eval_args;
    eval->add_option("name", eval_name)->required();
    eval->add_option("args", eval_args);
    eval->add_option("--q", eval_q);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite, v_q = "0.5", v_out;
    std::uint64_t v_seed = 7;
    int v_samples = 0;
    double v_scale = 1.0;
    verify->add_option("--suite", v_suite)->required();
    verify->add_option("--q", v_q);
    verify->add_option("--seed", v_seed);
    verify->add_option("--samples", v_samples);
    verify->add_option("--tolerance-scale", v_scale);
    verify->add_option("--out", v_out);

    auto* fact = app.add_subcommand("factorize", "factorize psi* at a point");
    std::string f_a, f_b, f_x, f_q = "0.5";
    int f_r = 0;
    fact->add_option("--r", f_r)->required();
    fact->add_option("--a", f_a)->required();
    fact->add_option("--b", f_b)->required();
    fact->add_option("--x", f_x)->required();
    fact->add_option("--q", f_q);

    CLI11_PARSE(app, argc, argv);

    if (eval->parsed()) return cmd_eval(eval_name, eval_args, eval_q);
    if (verify->parsed()) return cmd_verify(v_suite, v_q, v_seed, v_samples, v_scale, v_out);
    if (fact->parsed()) return cmd_factorize(f_r, f_a, f_b, f_x, f_q);
    return 2;
}
