#ifndef HOPFDDE_LINALG_HPP
#define HOPFDDE_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "hopfdde/params.hpp"

namespace hopfdde {

using cx = std::complex<double>;
using ComplexVec4 = std::array<cx, 4>;
using ComplexMat4 = std::array<std::array<cx, 4>, 4>;

inline ComplexVec4 matvec(const ComplexMat4& m, const ComplexVec4& x) {
    ComplexVec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m[i][j] * x[j];
    return r;
}

inline ComplexVec4 vecmat(const ComplexVec4& x, const ComplexMat4& m) {
    ComplexVec4 r{};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) r[j] += x[i] * m[i][j];
    return r;
}

/**
 * Solves m x = rhs by Gaussian elimination with partial pivoting.
 * Throws SingularMatrix when a pivot falls below 1e-13 times the row
 * scale, which in the normal-form pipeline signals a resonance.
 */
inline ComplexVec4 solve_complex_4x4(ComplexMat4 m, ComplexVec4 rhs) {
    double scale = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(m[i][j]));
    if (scale == 0.0) throw SingularMatrix("solve_complex_4x4: zero matrix");

    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::abs(m[col][col]);
        for (int r = col + 1; r < 4; ++r) {
            const double v = std::abs(m[r][col]);
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-13 * scale)
            throw SingularMatrix("solve_complex_4x4: pivot below threshold");
        if (piv != col) {
            std::swap(m[piv], m[col]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (int r = col + 1; r < 4; ++r) {
            const cx f = m[r][col] / m[col][col];
            m[r][col] = 0.0;
            for (int j = col + 1; j < 4; ++j) m[r][j] -= f * m[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    ComplexVec4 x{};
    for (int i = 3; i >= 0; --i) {
        cx s = rhs[i];
        for (int j = i + 1; j < 4; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

}  // namespace hopfdde

#endif  // HOPFDDE_LINALG_HPP
