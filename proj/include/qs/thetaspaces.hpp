#pragma once

#include <functional>
#include <vector>

#include "qs/series.hpp"

namespace qs {

// Callable contract for a function analytic on the punctured plane within the
// harness's sample region.
using SampledFunction = std::function<cplx(cplx)>;

// Quasi-period data of the space Theta_n(c): f(qx) = (-1)^n f(x) / (c x^n).
struct ThetaSpaceTag {
    int n;
    cplx c;
};

// Max over xs of the normalized residual of the Theta_n(c) functional equation.
double theta_space_residual(const SampledFunction& f, const ThetaSpaceTag& tag,
                            const std::vector<cplx>& xs, const QContext& ctx);

// Cardinal basis of Theta_n(c) on nodes zs (0-based j):
// theta(c z_1...z_n x / z_j) / theta(c z_1...z_n) * prod_{k != j} theta(x/z_k)/theta(z_j/z_k).
cplx vartheta_basis(int j, const std::vector<cplx>& zs, cplx c, cplx x, const QContext& ctx);

// Residual of Slater's general transformation for the _r psi_r^* numerator.
double slater_general_check(const SeriesSpec& spec, cplx x, cplx y,
                            const std::vector<cplx>& zs, const QContext& ctx);

// Cardinal basis of Omega_{2n}(c) on n+1 nodes zs (0-based j):
// prod_{k != j} theta(x/z_k) theta(c z_k x) / (theta(z_j/z_k) theta(c z_j z_k)).
cplx omega_basis(int j, const std::vector<cplx>& zs, cplx c, cplx x, const QContext& ctx);

// Residual of Slater's VWP transformation (even r >= 6 on W*/theta(y^2),
// odd r >= 5 with the theta(y sqrt q) weight).
double slater_vwp_check(const WSpec& wspec, cplx y, const std::vector<cplx>& zs,
                        const QContext& ctx);

// Theta Vandermonde prefactor: prod_{j<k} x_k theta(x_j/x_k); Delta_1 = 1.
cplx delta_n(const std::vector<cplx>& xs, const QContext& ctx);

// Constancy certificate for det(f_i(x_j)) / (Delta_n theta(c prod x)):
// compares the ratio across two node lists.
double theta_det_ratio(const std::vector<SampledFunction>& fs,
                       const std::vector<std::vector<cplx>>& xss, cplx c,
                       const QContext& ctx);

}  // namespace qs
