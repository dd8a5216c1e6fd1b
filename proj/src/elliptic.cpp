#include "qs/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace qs {

namespace {

// 15-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 15;
constexpr double kGLNode[kGL] = {
    -0.9879925180204854, -0.9372733924007059, -0.8482065834104272, -0.7244177313601700,
    -0.5709721726085388, -0.3941513470775634, -0.2011940939974345, 0.0,
    0.2011940939974345,  0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007059,  0.9879925180204854};
constexpr double kGLWeight[kGL] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719, 0.1395706779261543,
    0.1662692058169939, 0.1861610000155622, 0.1984314853271116, 0.2025782419255613,
    0.1984314853271116, 0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

double dist_to_segment(cplx p, cplx b) {
    const double bb = std::norm(b);
    if (bb == 0.0) return std::abs(p);
    double t = (p.real() * b.real() + p.imag() * b.imag()) / bb;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - t * b);
}

}  // namespace

InversionConstants InversionConstants::make(const QContext& ctx) {
    const cplx sq = ctx.sqrt_q();
    const cplx t1 = theta(sq, ctx);
    const cplx t2 = theta(-sq, ctx);
    InversionConstants c;
    c.k1 = t1 * t1 / (t2 * t2);
    c.k2 = t2 * t2 / (t1 * t1);
    c.norm = t1 * t2;
    return c;
}

cplx theta_quotient(cplx x, const QContext& ctx) {
    if (x == 0.0) throw DomainError("theta_quotient: x must be non-zero");
    const cplx tm = theta(-x, ctx);
    if (std::abs(tm) < 1e-10) throw PoleHit("theta_quotient: theta(-x) vanishes");
    const cplx tp = theta(x, ctx);
    return tp * tp / (tm * tm);
}

cplx inversion_kernel(cplx u, const InversionConstants& consts) {
    const cplx under = u * (1.0 - consts.k1 * u) * (1.0 - consts.k2 * u);
    if (std::abs(under) == 0.0) throw BranchPointHit("inversion_kernel: branch point");
    return 1.0 / std::sqrt(under);
}

// Integral of du / sqrt(u (1-k1 u)(1-k2 u)) from 0 to y, with the substitution
// u = s^2 removing the endpoint singularity: 2 ds / sqrt((1-k1 s^2)(1-k2 s^2))
// from 0 to sqrt(y). The square root branch is continued from +1 at s = 0.
cplx inversion_integral(cplx y, const InversionConstants& consts, const QContext& ctx) {
    const cplx end = std::sqrt(y);
    const cplx bps[4] = {1.0 / std::sqrt(consts.k1), -1.0 / std::sqrt(consts.k1),
                         1.0 / std::sqrt(consts.k2), -1.0 / std::sqrt(consts.k2)};
    for (const cplx& bp : bps)
        if (dist_to_segment(bp, end) < 1e-3 * std::abs(bp))
            throw NearBranchPoint("inversion_integral: path too close to a branch point");

    auto integrate = [&](int panels) -> cplx {
        cplx sum = 0.0;
        cplx g_ref = 1.0;  // sqrt((1-k1 s^2)(1-k2 s^2)) at s = 0
        for (int p = 0; p < panels; ++p) {
            const cplx s0 = end * (static_cast<double>(p) / panels);
            const cplx s1 = end * (static_cast<double>(p + 1) / panels);
            const cplx half = 0.5 * (s1 - s0);
            const cplx mid = 0.5 * (s0 + s1);
            cplx acc = 0.0;
            for (int i = 0; i < kGL; ++i) {
                const cplx s = mid + half * kGLNode[i];
                const cplx s2 = s * s;
                cplx g = std::sqrt((1.0 - consts.k1 * s2) * (1.0 - consts.k2 * s2));
                if (std::abs(g - g_ref) > std::abs(g + g_ref)) g = -g;
                g_ref = g;
                acc += kGLWeight[i] * 2.0 / g;
            }
            sum += acc * half;
        }
        return sum;
    };

    cplx prev = integrate(8);
    for (int panels = 16; panels <= 4096; panels *= 2) {
        const cplx cur = integrate(panels);
        if (std::abs(cur - prev) < 1e-11 * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    (void)ctx;
    throw QuadratureFail("inversion_integral: panel subdivision limit reached");
}

cplx jacobi_inverse(cplx y, const QContext& ctx) {
    const InversionConstants consts = InversionConstants::make(ctx);
    if (std::abs(y) < 1e-3) throw NearBranchPoint("jacobi_inverse: y too close to 0");
    for (const cplx bp : {1.0 / consts.k1, 1.0 / consts.k2})
        if (std::abs(y - bp) < 1e-3 * std::abs(bp))
            throw NearBranchPoint("jacobi_inverse: y too close to a branch point");
    const cplx integral = inversion_integral(y, consts, ctx);
    return std::exp(integral / consts.norm);
}

}  // namespace qs
