#include "tropodegen/equations.hpp"

#include "tropodegen/errors.hpp"

#include <sstream>

namespace tropodegen {

IntMatrix skew_block() { return IntMatrix{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}; }

IntMatrix skew_block_diagonal(std::size_t tet_count) {
    const IntMatrix c1 = skew_block();
    IntMatrix cn(3 * tet_count, 3 * tet_count);
    for (std::size_t t = 0; t < tet_count; ++t)
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) cn(3 * t + r, 3 * t + c) = c1(r, c);
    return cn;
}

GluingSystem build_gluing_system(const IdealTriangulation& tri) {
    GluingSystem s;
    s.tet_count = tri.size();
    const auto& classes = tri.edge_classes();
    s.A = IntMatrix(classes.size(), 3 * s.tet_count);
    for (std::size_t j = 0; j < classes.size(); ++j) {
        const auto row = classes[j].exponent_row(s.tet_count);
        for (std::size_t k = 0; k < row.size(); ++k) s.A(j, k) = row[k];
    }
    s.Cn = skew_block_diagonal(s.tet_count);
    s.B = s.A * s.Cn;
    return s;
}

ShapeAssignment ShapeAssignment::from_z(const std::vector<Complex>& z) {
    std::vector<std::array<Complex, 3>> triples;
    triples.reserve(z.size());
    for (const auto& x : z) {
        if (x == Complex(0) || x == Complex(1)) throw DomainError("shape parameter equal to 0 or 1");
        triples.push_back({x, 1.0 / (1.0 - x), 1.0 - 1.0 / x});
    }
    return ShapeAssignment(std::move(triples));
}

std::vector<Complex> ShapeAssignment::z() const {
    std::vector<Complex> out;
    out.reserve(triples_.size());
    for (const auto& t : triples_) out.push_back(t[0]);
    return out;
}

namespace {

void require_nonzero(const ShapeAssignment& Z) {
    for (const auto& t : Z.triples())
        for (const auto& x : t)
            if (x == Complex(0)) throw DomainError("zero shape coordinate");
}

}  // namespace

std::vector<Complex> parameter_residuals(const ShapeAssignment& Z) {
    require_nonzero(Z);
    std::vector<Complex> out;
    out.reserve(3 * Z.size());
    for (const auto& [z, zp, zpp] : Z.triples()) {
        out.push_back(z * (1.0 - zpp) - 1.0);
        out.push_back(zp * (1.0 - z) - 1.0);
        out.push_back(zpp * (1.0 - zp) - 1.0);
    }
    return out;
}

Complex evaluate_monomial(const IntVector& exponents, const ShapeAssignment& Z, int sign) {
    if (exponents.size() != 3 * Z.size()) throw DimensionError("exponent vector does not match shape count");
    Complex value(sign, 0.0);
    for (std::size_t k = 0; k < exponents.size(); ++k) {
        const int e = exponents[k].convert_to<int>();
        if (e == 0) continue;
        const Complex x = Z.coordinate(k);
        if (x == Complex(0)) throw DomainError("zero shape coordinate");
        value *= std::pow(x, e);
    }
    return value;
}

std::vector<Complex> gluing_residuals(const GluingSystem& S, const ShapeAssignment& Z) {
    require_nonzero(Z);
    if (Z.size() != S.tet_count) throw DimensionError("shape assignment does not match triangulation");
    std::vector<Complex> out;
    out.reserve(S.A.rows());
    for (std::size_t j = 0; j < S.A.rows(); ++j) out.push_back(evaluate_monomial(S.A.row(j), Z) - 1.0);
    return out;
}

namespace {

const char* kPrimes[3] = {"", "′", "″"};

std::string superscript(const Integer& e) {
    static const char* digits[10] = {"⁰", "¹", "²", "³", "⁴",
                                     "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s;
    if (e < 0) s += "⁻";
    for (char c : (e < 0 ? Integer(-e) : e).str()) s += digits[c - '0'];
    return s;
}

}  // namespace

std::string format_gluing_equation(const IntVector& row, const std::vector<std::string>& shape_names) {
    std::string out = "1 = ";
    bool any = false;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] == 0) continue;
        any = true;
        const std::string base = shape_names.at(k / 3) + kPrimes[k % 3];
        if (row[k] == 1)
            out += base;
        else if (k % 3 == 0)
            out += base + superscript(row[k]);
        else
            out += "(" + base + ")" + superscript(row[k]);
    }
    if (!any) out += "1";
    return out;
}

std::string format_matching_equation(const IntVector& row, const std::vector<std::string>& quad_names) {
    std::string out = "0 =";
    bool first = true;
    for (std::size_t k = 0; k < row.size(); ++k) {
        const Integer& c = row[k];
        if (c == 0) continue;
        const Integer mag = c < 0 ? Integer(-c) : c;
        if (first)
            out += c < 0 ? " -" : " ";
        else
            out += c < 0 ? " - " : " + ";
        if (mag != 1) out += mag.str() + " ";
        out += quad_names.at(k / 3) + kPrimes[k % 3];
        first = false;
    }
    if (first) out += " 0";
    return out;
}

std::string matrix_to_csv(const IntMatrix& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
        out << '\n';
    }
    return out.str();
}

}  // namespace tropodegen
