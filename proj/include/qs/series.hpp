#pragma once

#include <vector>

#include "qs/qcore.hpp"

namespace qs {

// Parameter lists a[0..r-1], b[0..r-1] of a bilateral _r psi_r family.
struct SeriesSpec {
    int r;
    std::vector<cplx> a;
    std::vector<cplx> b;

    SeriesSpec(std::vector<cplx> a_, std::vector<cplx> b_);

    cplx prod_a() const;
    cplx prod_b() const;
};

// Parameter list a[0..r-3] of a very-well-poised-balanced _r W_r family.
struct WSpec {
    int r;
    std::vector<cplx> a;

    WSpec(int r_, std::vector<cplx> a_);

    cplx prod_a() const;
    // The ratio q^{(r-4)/2} / (a_1 ... a_{r-2}) appearing in the summand.
    cplx base_ratio(const QContext& ctx) const;
};

struct Annulus {
    double inner = 0.0;
    double outer = 1.0;
    bool empty() const { return !(inner < outer); }
};

// Value of a bilateral sum together with the largest single-term magnitude
// encountered; the scale is the right normalizer for "identically zero"
// assertions.
struct SeriesValue {
    cplx value = 0.0;
    double scale = 0.0;
    int terms_used = 0;
};

// Convergence annulus |b_1...b_r / a_1...a_r| < |x| < 1.
Annulus psi_annulus(const SeriesSpec& spec, const QContext& ctx);

// The n-th summand of the defining bilateral series.
cplx psi_term(const SeriesSpec& spec, cplx x, cplx y, long n, const QContext& ctx);

// Bilateral sum, accumulated n = 0, +1, -1, +2, -2, ...
cplx psi(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx);
SeriesValue psi_full(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx);

// Analytic numerator: psi times the explicit denominator products.
cplx psi_star(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx);
SeriesValue psi_star_full(const SeriesSpec& spec, cplx x, cplx y, const QContext& ctx);

// VWP-balanced bilateral series and its analytic numerator.
cplx w_series(const WSpec& wspec, cplx y, const QContext& ctx);
SeriesValue w_series_full(const WSpec& wspec, cplx y, const QContext& ctx);
cplx w_star(const WSpec& wspec, cplx y, const QContext& ctx);
SeriesValue w_star_full(const WSpec& wspec, cplx y, const QContext& ctx);

}  // namespace qs
