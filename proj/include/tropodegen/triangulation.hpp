#pragma once

// Ideal triangulations: face pairings, edge classes, cusp (vertex-link)
// triangulations and peripheral curves drawn on them.
//
// Conventions
//   * Face f of a tetrahedron is the face opposite vertex f.
//   * A gluing of face f of tetrahedron i is (j, perm); vertex v of i is
//     identified with vertex perm[v] of j and perm[f] is the face of j.
//   * Edge labels, for a positively oriented tetrahedron: z on {01},{23},
//     z' on {02},{13}, z'' on {03},{12}. Positive orientation means the
//     vertex order (0,1,2,3) agrees with the coherent orientation; for a
//     negatively oriented tetrahedron the z' and z'' labels trade places.
//   * Seen from the cusp, the corners of every cusp triangle labelled
//     z, z', z'' run counterclockwise.
//   * Shape coordinates are ordered (z_0, z'_0, z''_0, z_1, ...); index
//     3 * tet + label.

#include "tropodegen/exact.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tropodegen {

class Perm4 {
public:
    Perm4() : image_{0, 1, 2, 3} {}
    explicit Perm4(std::array<int, 4> image);

    int operator[](int v) const { return image_[static_cast<std::size_t>(v)]; }
    Perm4 inverse() const;
    /// Composition: (a * b)[v] = a[b[v]].
    friend Perm4 operator*(const Perm4& a, const Perm4& b);
    /// +1 for even permutations, -1 for odd ones.
    int sign() const;
    const std::array<int, 4>& image() const { return image_; }
    std::string str() const;

    friend bool operator==(const Perm4&, const Perm4&) = default;

private:
    std::array<int, 4> image_;
};

struct FaceGluing {
    int tet = 0;
    Perm4 perm;
};

/// Shape label index: 0 = z, 1 = z', 2 = z''.
using ShapeLabel = int;

/// Label of the edge {a, b} in the standard positively oriented simplex.
ShapeLabel standard_edge_label(int a, int b);

struct EdgeIncidence {
    int tet = 0;
    int a = 0;
    int b = 0;
    ShapeLabel label = 0;
};

struct EdgeClass {
    int id = 0;
    std::vector<EdgeIncidence> members;

    std::size_t degree() const { return members.size(); }
    /// Exponent row of the gluing equation of this edge (length 3n).
    IntVector exponent_row(std::size_t tet_count) const;
};

/// One step of a normal curve on a cusp torus: it crosses the triangle at
/// ideal vertex `vertex` of tetrahedron `tet`, entering through side `in`
/// and leaving through side `out`. Sides are named by the tetrahedron face
/// they lie on.
struct PathStep {
    int tet = 0;
    int vertex = 0;
    int in = 0;
    int out = 0;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct PeripheralCurve {
    int cusp = 0;
    std::string name;
    std::vector<PathStep> path;

    std::size_t length() const { return path.size(); }
    /// Holonomy exponents in shape coordinates, normalised so the z''
    /// exponent of every tetrahedron is zero; mu(gamma) = sign * Z^mu.
    IntVector mu;
    int sign = 1;
    /// Coefficients of nu(gamma) on quad coordinates, from Q-moduli.
    IntVector nu;
};

class IdealTriangulation {
public:
    /// Validates the gluing data and derives orientation, edge classes and
    /// cusps. Throws SchemaError, GluingError, OrientabilityError,
    /// TopologyError.
    explicit IdealTriangulation(std::vector<std::array<FaceGluing, 4>> gluings);

    std::size_t size() const { return gluings_.size(); }
    const FaceGluing& gluing(int tet, int face) const;
    const std::vector<std::array<FaceGluing, 4>>& gluings() const { return gluings_; }

    /// +1 or -1 relative to the coherent orientation (tetrahedron 0 is +1).
    int orientation(int tet) const { return orientation_[static_cast<std::size_t>(tet)]; }
    ShapeLabel edge_label(int tet, int a, int b) const;

    const std::vector<EdgeClass>& edge_classes() const { return edge_classes_; }
    int edge_class_of(int tet, int a, int b) const;

    std::size_t cusp_count() const { return cusp_count_; }
    int cusp_of(int tet, int vertex) const;

    /// Corners (ideal vertices u != vertex) of a cusp triangle in
    /// counterclockwise order z, z', z''.
    std::array<int, 3> ccw_corners(int tet, int vertex) const;

    const std::vector<PeripheralCurve>& curves() const { return curves_; }
    const PeripheralCurve& curve(const std::string& name) const;
    void add_curve(PeripheralCurve curve) { curves_.push_back(std::move(curve)); }

    std::string name;
    /// Display names for the shape of each tetrahedron ("w", "z", ...).
    std::vector<std::string> shape_names;
    /// Display names for the quad coordinates of each tetrahedron.
    std::vector<std::string> quad_names;

private:
    std::vector<std::array<FaceGluing, 4>> gluings_;
    std::vector<int> orientation_;
    std::vector<EdgeClass> edge_classes_;
    std::vector<std::array<int, 6>> edge_class_index_;
    std::vector<std::array<int, 4>> cusp_index_;
    std::size_t cusp_count_ = 0;
    std::vector<PeripheralCurve> curves_;
};

/// Parses the JSON triangulation document. Peripheral curves, if present,
/// are validated with validate_curve.
IdealTriangulation parse_triangulation(const std::string& text);
IdealTriangulation load_triangulation(const std::string& path);

std::vector<EdgeClass> edge_classes(const IdealTriangulation& tri);

struct CuspTriangle {
    int tet = 0;
    int vertex = 0;
    std::array<int, 3> ccw;  ///< corner vertices, counterclockwise
    /// neighbours[s] for side s in `ccw` order of the opposite corner:
    /// index into `triangles` of the triangle across the side opposite ccw[s].
    std::array<int, 3> neighbours{};
};

struct CuspVertex {
    int edge_class = 0;
    /// (tet, label) of each corner around this vertex.
    std::vector<std::pair<int, ShapeLabel>> corners;
};

struct CuspTriangulation {
    int cusp = 0;
    std::vector<CuspTriangle> triangles;
    std::vector<CuspVertex> vertices;
    std::size_t edge_count = 0;

    int euler_characteristic() const {
        return static_cast<int>(vertices.size()) - static_cast<int>(edge_count) +
               static_cast<int>(triangles.size());
    }
    int genus() const { return (2 - euler_characteristic()) / 2; }
    int triangle_index(int tet, int vertex) const;
};

/// Throws TopologyError if the link is not a closed surface, std::out_of_range
/// for an unknown cusp.
CuspTriangulation cusp_triangulation(const IdealTriangulation& tri, int cusp);

/// Checks the path is a closed normal curve on one cusp and computes its
/// holonomy exponents, sign and nu coefficients. Throws PathError.
PeripheralCurve validate_curve(const IdealTriangulation& tri, std::string name,
                               std::vector<PathStep> path);

/// Where crossing side `side` of cusp triangle (tet, vertex) leads: the
/// neighbouring triangle and the side it is entered through.
PathStep cross_side(const IdealTriangulation& tri, int tet, int vertex, int side);

/// Best-effort search for two closed curves on a cusp whose holonomy
/// classes are independent modulo the edge relations. No canonical
/// meridian/longitude is promised.
std::vector<PeripheralCurve> find_peripheral_cycles(const IdealTriangulation& tri, int cusp,
                                                    std::size_t max_length = 16);

}  // namespace tropodegen
