#pragma once

// Points of the Riemann sphere, Mobius transformations and the developing
// map of an ideal triangulation.
//
// Matrices are projective: only the determinant (normalised to 1) and the
// square of the trace are meaningful.

#include "tropodegen/equations.hpp"
#include "tropodegen/triangulation.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tropodegen {

using Mat2 = Eigen::Matrix2cd;

/// A point of CP^1 in homogeneous coordinates [x : y].
struct CP1Point {
    Complex x = 0;
    Complex y = 1;

    static CP1Point finite(Complex z) { return {z, 1.0}; }
    static CP1Point infinity() { return {1.0, 0.0}; }

    bool is_infinite(double eps = 1e-14) const;
    /// x / y; throws DomainError at infinity.
    Complex value() const;
    std::string str() const;
};

/// Chordal distance on the sphere, in [0, 1].
double chordal_distance(const CP1Point& a, const CP1Point& b);

CP1Point apply(const Mat2& m, const CP1Point& p);

/// (a,b;c,d) = (a-c)(b-d) / ((a-d)(b-c)), extended to infinity.
/// Throws DomainError when the value is infinite or undefined.
Complex cross_ratio(const CP1Point& a, const CP1Point& b, const CP1Point& c, const CP1Point& d);

/// The Mobius map sending src[k] to dst[k], with determinant 1.
/// Throws DegenerateTripleError if a triple has repeated points.
Mat2 mobius_from_triples(const std::array<CP1Point, 3>& src, const std::array<CP1Point, 3>& dst);

/// tr(m)^2 / det(m).
Complex trace_squared(const Mat2& m);

struct DevelopedTetrahedron {
    int tet = 0;
    int parent = -1;    ///< tetrahedron developed before this one, -1 at the base
    int via_face = -1;  ///< face of `tet` shared with the parent
    std::array<CP1Point, 4> vertices;
    /// Cross ratio of the developed vertices at the edge {0,1} (the z edge).
    Complex cross_ratio = 0;
};

struct FacePairing {
    int tet = 0;
    int face = 0;
    int other_tet = 0;
    int other_face = 0;
    /// Sends the developed face of other_tet onto the developed face of tet.
    Mat2 matrix;
    /// A developed ideal vertex fixed by the pairing, if any (parabolic or
    /// loxodromic element fixing a cusp point of the fundamental domain).
    std::optional<CP1Point> fixed_point;
    bool peripheral = false;
};

struct CurveHolonomy {
    std::string name;
    Mat2 matrix;
    Complex trace_squared = 0;
};

struct Development {
    std::vector<DevelopedTetrahedron> tetrahedra;
    /// One matrix per face pairing not used by the spanning tree.
    std::vector<FacePairing> pairings;
    /// Deck transformations of the triangulation's peripheral curves.
    std::vector<CurveHolonomy> curves;
};

/// Positions of the ideal vertices of tetrahedron `tet` in its own frame:
/// vertices 0,1,2,3 of the oriented labelling at infinity, 0, 1, z.
std::array<CP1Point, 4> standard_placement(const IdealTriangulation& tri, const ShapeAssignment& Z, int tet);

/// Cross ratio assigned to the edge {a, b} of a placed tetrahedron,
/// (x_a, x_b; x_c, x_d) for (a, b, c, d) agreeing with the tetrahedron's
/// orientation.
Complex edge_cross_ratio(const IdealTriangulation& tri, int tet, const std::array<CP1Point, 4>& x, int a, int b);

/// Develops one copy of every tetrahedron along a breadth-first spanning
/// tree rooted at tetrahedron 0. Throws DomainError for degenerate shapes
/// and ConsistencyError when Z is not on the deformation variety (largest
/// gluing residual above `tolerance`).
Development develop(const IdealTriangulation& tri, const ShapeAssignment& Z, double tolerance = 1e-8);

/// Deck transformation of a closed normal curve, obtained by developing the
/// tetrahedra it crosses.
Mat2 curve_holonomy(const IdealTriangulation& tri, const ShapeAssignment& Z, const PeripheralCurve& gamma);

}  // namespace tropodegen
