#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "exact/ratfunc.hpp"

namespace trigdarboux {

/// Dense row-major matrix over one of the exact entry types.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        require(data_.size() == rows_ * cols_, "matrix data does not match its shape");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix scalar(std::size_t n, const T& c) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T>& data() const { return data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(std::declval<const T&>()));
        std::vector<U> out;
        out.reserve(data_.size());
        for (const auto& e : data_) out.push_back(f(e));
        return Matrix<U>(rows_, cols_, std::move(out));
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch in +");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch in -");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, "matrix shape mismatch in *");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const T& c, const Matrix& a) {
        Matrix r = a;
        for (auto& e : r.data_) e = c * e;
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ScalarMatrix = Matrix<GaussianRational>;
using PolyMatrix = Matrix<MultiPoly>;
using RatMatrix = Matrix<RatFunc>;

/// Gaussian elimination over Q(i).
GaussianRational det(const ScalarMatrix& m);
/// Fraction-free Bareiss elimination.
MultiPoly det(const PolyMatrix& m);
/// Rows are cleared of denominators, then Bareiss.
RatFunc det(const RatMatrix& m);

std::size_t rank(const ScalarMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Gauss-Jordan inverse; throws Error(InvalidInput) when singular.
ScalarMatrix inverse(const ScalarMatrix& m);
RatMatrix inverse(const RatMatrix& m);

/// Lifts a scalar matrix to rational-function entries.
RatMatrix to_rat(const ScalarMatrix& m);

/// Brings m to reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m);

} // namespace trigdarboux
