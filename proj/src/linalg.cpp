#include "qs/linalg.hpp"

#include <cmath>
#include <utility>

namespace qs {

cplx det_small(std::vector<std::vector<cplx>> m) {
    const size_t n = m.size();
    cplx det = 1.0;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (std::abs(m[piv][k]) == 0.0) return 0.0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            const cplx f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

static double perm_abs_rec(const std::vector<std::vector<double>>& m, size_t row,
                           unsigned used) {
    const size_t n = m.size();
    if (row == n) return 1.0;
    double sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
        if (used & (1u << j)) continue;
        sum += m[row][j] * perm_abs_rec(m, row + 1, used | (1u << j));
    }
    return sum;
}

double perm_abs(const std::vector<std::vector<cplx>>& m) {
    const size_t n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = std::abs(m[i][j]);
    return perm_abs_rec(a, 0, 0u);
}

}  // namespace qs
