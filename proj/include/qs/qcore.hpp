#pragma once

#include <complex>
#include <vector>

#include "qs/errors.hpp"

namespace qs {

using cplx = std::complex<double>;

// Evaluation context threaded through every operation: the base q, the
// target relative accuracy of truncated products/sums, and the truncation
// policy (hard cap plus a stopping hysteresis of consecutive small terms).
class QContext {
public:
    QContext(cplx q, double eps = 1e-14, int max_terms = 2048, int consec_small = 3);

    cplx q() const { return q_; }
    double abs_q() const { return abs_q_; }
    double eps() const { return eps_; }
    int max_terms() const { return max_terms_; }
    int consec_small() const { return consec_small_; }

    // Principal square root of q, cached (used by the VWP series and the
    // elliptic inversion constants).
    cplx sqrt_q() const { return sqrt_q_; }

private:
    cplx q_;
    double abs_q_;
    double eps_;
    int max_terms_;
    int consec_small_;
    cplx sqrt_q_;
};

struct TruncationOutcome {
    cplx value = 0.0;
    int terms_used = 0;
    bool converged = false;
};

// Finite q-Pochhammer symbol (x)_n, extended to negative n by inverting the
// recursion (x)_{n+1} = (1 - x q^n)(x)_n.
cplx qpoch(cplx x, long n, const QContext& ctx);

// Infinite product (x)_inf, truncated under the context's contract.
cplx qpoch_inf(cplx x, const QContext& ctx);

// Product (x_1, x_2, ..., x_m)_n.
cplx qpoch_multi(const std::vector<cplx>& xs, long n, const QContext& ctx);

// Product (x_1, x_2, ..., x_m)_inf.
cplx qpoch_multi_inf(const std::vector<cplx>& xs, const QContext& ctx);

// Jacobian theta function theta(x) = (x, q/x, q)_inf.
cplx theta(cplx x, const QContext& ctx);

}  // namespace qs
