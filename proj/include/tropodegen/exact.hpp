#pragma once

// Exact integer/rational scalars and a small dense matrix used for the
// combinatorial side (gluing exponents, Q-matching matrix, quad coordinates).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropodegen {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
        return out;
    }

    template <typename V>
    std::vector<V> apply(const std::vector<V>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
        std::vector<V> out(rows_, V(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if ((*this)(r, c) != 0) out[r] += V((*this)(r, c)) * x[c];
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

/// Smallest positive multiple of `v` that is an integer vector with content 1.
/// Returns the integer vector and the multiplier; the zero vector maps to itself
/// with multiplier 1.
struct IntegralScaling {
    IntVector vector;
    Rational factor;
};
IntegralScaling primitive_integer_multiple(const RationalVector& v);

RationalVector to_rational(const IntVector& v);
RationalVector to_rational(const std::vector<long long>& v);

Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const IntVector& a, const RationalVector& b);

/// Basis of the right null space of `m`, by exact Gauss-Jordan elimination.
std::vector<RationalVector> null_space(const Matrix<Rational>& m);

Matrix<Rational> to_rational(const IntMatrix& m);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

}  // namespace tropodegen
