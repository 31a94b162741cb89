#include "tropodegen/exact.hpp"

#include <boost/integer/common_factor.hpp>

namespace tropodegen {

IntegralScaling primitive_integer_multiple(const RationalVector& v) {
    Integer lcm_den = 1;
    for (const auto& q : v) {
        if (q == 0) continue;
        lcm_den = boost::integer::lcm(lcm_den, Integer(denominator(q)));
    }
    IntVector scaled;
    scaled.reserve(v.size());
    Integer content = 0;
    for (const auto& q : v) {
        Integer x = numerator(q) * (lcm_den / Integer(denominator(q)));
        content = boost::integer::gcd(content, x < 0 ? Integer(-x) : x);
        scaled.push_back(x);
    }
    if (content == 0) return {std::move(scaled), Rational(1)};
    for (auto& x : scaled) x /= content;
    return {std::move(scaled), Rational(lcm_den, content)};
}

RationalVector to_rational(const IntVector& v) {
    return RationalVector(v.begin(), v.end());
}

RationalVector to_rational(const std::vector<long long>& v) {
    RationalVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Rational dot(const IntVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += Rational(a[i]) * b[i];
    return s;
}

Matrix<Rational> to_rational(const IntMatrix& m) {
    Matrix<Rational> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
    return out;
}

std::vector<RationalVector> null_space(const Matrix<Rational>& m) {
    Matrix<Rational> a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t k = 0; k < cols; ++k) std::swap(a(p, k), a(r, k));
        const Rational inv = 1 / a(r, c);
        for (std::size_t k = c; k < cols; ++k) a(r, k) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t k = c; k < cols; ++k) a(i, k) -= f * a(r, k);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace tropodegen
