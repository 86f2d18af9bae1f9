#include "exact/matrix.hpp"

namespace trigdarboux {

template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        T inv = T(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            T factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template std::vector<std::size_t> row_reduce(ScalarMatrix&);
template std::vector<std::size_t> row_reduce(RatMatrix&);

namespace {

template <class T>
T det_field(Matrix<T> m) {
    require(m.is_square(), "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    T result(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k).is_zero()) ++p;
        if (p == n) return T(0);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            result = -result;
        }
        result *= m(k, k);
        T inv = T(1) / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            T factor = m(i, k) * inv;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
        }
    }
    return result;
}

template <class T>
Matrix<T> inverse_field(const Matrix<T>& m) {
    require(m.is_square(), "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T(1);
    }
    auto pivots = row_reduce(aug);
    if (pivots.size() < n || (n > 0 && pivots.back() >= n)) fail(ErrorKind::InvalidInput, "matrix is singular");
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

} // namespace

GaussianRational det(const ScalarMatrix& m) { return det_field(m); }

MultiPoly det(const PolyMatrix& input) {
    require(input.is_square(), "determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return MultiPoly(1);
    PolyMatrix m = input;
    MultiPoly prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return MultiPoly();
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = prev.is_constant() ? t * prev.constant_value().inverse() : divide_or_throw(t, prev);
            }
        prev = m(k, k);
    }
    MultiPoly d = m(n - 1, n - 1);
    return negate ? -d : d;
}

RatFunc det(const RatMatrix& m) {
    require(m.is_square(), "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    PolyMatrix cleared(n, n);
    MultiPoly scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly l(1);
        for (std::size_t j = 0; j < n; ++j)
            if (!m(i, j).is_polynomial()) l = poly_lcm(l, m(i, j).den());
        for (std::size_t j = 0; j < n; ++j)
            cleared(i, j) = m(i, j).is_polynomial() ? m(i, j).num() * l
                                                    : m(i, j).num() * divide_or_throw(l, m(i, j).den());
        scale *= l;
    }
    return RatFunc::make(det(cleared), scale);
}

std::size_t rank(const ScalarMatrix& m) {
    ScalarMatrix c = m;
    return row_reduce(c).size();
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix c = m;
    return row_reduce(c).size();
}

ScalarMatrix inverse(const ScalarMatrix& m) { return inverse_field(m); }
RatMatrix inverse(const RatMatrix& m) { return inverse_field(m); }

RatMatrix to_rat(const ScalarMatrix& m) {
    return m.map([](const GaussianRational& c) { return RatFunc(c); });
}

} // namespace trigdarboux
