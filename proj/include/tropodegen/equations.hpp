#pragma once

#include "tropodegen/exact.hpp"
#include "tropodegen/triangulation.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace tropodegen {

using Complex = std::complex<double>;

/// Exponent matrix A of the gluing equations (rows = edge classes), the
/// block-diagonal skew matrix C_n and the Q-matching matrix B = A C_n.
struct GluingSystem {
    std::size_t tet_count = 0;
    IntMatrix A;
    IntMatrix Cn;
    IntMatrix B;
};

/// The 3x3 block [[0,1,-1],[-1,0,1],[1,-1,0]].
IntMatrix skew_block();
IntMatrix skew_block_diagonal(std::size_t tet_count);

GluingSystem build_gluing_system(const IdealTriangulation& tri);

/// Shapes (z, z', z'') for each tetrahedron, in coordinate order.
class ShapeAssignment {
public:
    ShapeAssignment() = default;
    explicit ShapeAssignment(std::vector<std::array<Complex, 3>> triples) : triples_(std::move(triples)) {}

    /// Companions from the parameter relations: z' = 1/(1-z), z'' = 1 - 1/z.
    /// Throws DomainError for z = 0 or z = 1.
    static ShapeAssignment from_z(const std::vector<Complex>& z);

    std::size_t size() const { return triples_.size(); }
    const std::array<Complex, 3>& operator[](std::size_t t) const { return triples_[t]; }
    Complex coordinate(std::size_t k) const { return triples_[k / 3][k % 3]; }
    std::vector<Complex> z() const;
    const std::vector<std::array<Complex, 3>>& triples() const { return triples_; }

private:
    std::vector<std::array<Complex, 3>> triples_;
};

/// (p_i, p'_i, p''_i) per tetrahedron, flattened. Throws DomainError on a zero shape.
std::vector<Complex> parameter_residuals(const ShapeAssignment& Z);

/// g_j = prod Z^{A_j} - 1 per edge class. Throws DomainError on a zero shape.
std::vector<Complex> gluing_residuals(const GluingSystem& S, const ShapeAssignment& Z);

/// sign * prod Z^{exponents}.
Complex evaluate_monomial(const IntVector& exponents, const ShapeAssignment& Z, int sign = 1);

/// Multiplicative form of one gluing equation, e.g. "1 = (w′)²w″(z′)²z″".
std::string format_gluing_equation(const IntVector& row, const std::vector<std::string>& shape_names);
/// Additive form of one Q-matching equation, e.g. "0 = p + p′ - 2p″ + ...".
std::string format_matching_equation(const IntVector& row, const std::vector<std::string>& quad_names);

std::string matrix_to_csv(const IntMatrix& m);

}  // namespace tropodegen
