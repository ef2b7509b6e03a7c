#include "rsdkit/linalg.hpp"

#include <utility>

namespace rsdkit {

namespace {

void check_square(const IntMatrix& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw ValidationError("matrix is not square");
}

}  // namespace

Int determinant(IntMatrix m) {
    check_square(m);
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;  // exact by Bareiss
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

DeterminantCheck det_nonzero(const IntMatrix& m) {
    DeterminantCheck out;
    out.value = determinant(m);
    out.nonzero = out.value != 0;
    return out;
}

std::optional<std::vector<Rational>> solve_linear_system(const IntMatrix& a,
                                                         const std::vector<Rational>& b) {
    check_square(a);
    const std::size_t n = a.size();
    if (b.size() != n) throw ValidationError("right-hand side length does not match the matrix");
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rational(a[i][j]);
        aug[i][n] = b[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) std::swap(aug[piv], aug[col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (aug[i][col] == 0) continue;
            const Rational f = aug[i][col] / aug[col][col];
            aug[i][col] = 0;
            for (std::size_t j = col + 1; j <= n; ++j) aug[i][j] -= f * aug[col][j];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t col = n; col-- > 0;) {
        Rational acc = aug[col][n];
        for (std::size_t j = col + 1; j < n; ++j) acc -= aug[col][j] * x[j];
        x[col] = acc / aug[col][col];
    }
    return x;
}

}  // namespace rsdkit
