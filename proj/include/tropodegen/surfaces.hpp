#pragma once

// Boundary behaviour of admissible quad solutions: the nu functional, boundary
// slopes, non-triviality certificates, integral representatives and local
// dual-spine data.

#include "tropodegen/equations.hpp"
#include "tropodegen/exact.hpp"
#include "tropodegen/triangulation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropodegen {

/// nu_N(gamma) = nu(gamma) . N. Throws MatchingError unless B N = 0.
Rational nu_evaluate(const GluingSystem& S, const RationalVector& N, const PeripheralCurve& gamma);

struct PeripheralBasis {
    const PeripheralCurve* meridian = nullptr;
    const PeripheralCurve* longitude = nullptr;
};

/// Meridian/longitude per cusp, looked up by curve name ("meridian"/"M",
/// "longitude"/"L"). Throws MissingBasisError.
std::vector<PeripheralBasis> peripheral_basis(const IdealTriangulation& tri);

struct CuspSlope {
    int cusp = 0;
    Rational nu_meridian;
    Rational nu_longitude;
    std::optional<Rational> slope;  ///< -nu(L)/nu(M), absent when nu(M) = 0
    std::string note;
};

struct SlopeReport {
    std::vector<CuspSlope> cusps;
    /// (-nu(L_1), nu(M_1), ..., -nu(L_h), nu(M_h)) as a primitive integer vector.
    IntVector boundary_vector;
};

SlopeReport boundary_slopes(const GluingSystem& S, const RationalVector& N, const IdealTriangulation& tri);

enum class Verdict { CertifiedNontrivial, Undetermined };
std::string to_string(Verdict v);

struct Certificate {
    Verdict verdict = Verdict::Undetermined;
    std::string witness;  ///< name of a curve with nonzero nu, if any
    Rational value;
};

Certificate nontriviality_certificate(const GluingSystem& S, const RationalVector& N,
                                      const std::vector<PeripheralCurve>& curves);

struct IntegralSurface {
    IntVector minimal;   ///< r1 N, integral with content 1
    IntVector doubled;   ///< 2 r1 N
    Rational scaling;    ///< r1
    std::string warning;
};

/// Two-sidedness is not decided: both r1 N and 2 r1 N are returned.
IntegralSurface integral_surface(const RationalVector& N);

enum class FaceCase { Butterfly, Case1, Case2 };
std::string to_string(FaceCase c);

struct TetrahedronSpine {
    int tet = 0;
    Rational length;              ///< k, the interval [0, k]
    std::optional<ShapeLabel> quad;  ///< quad type carrying k, if k > 0
    std::array<int, 2> end0{};    ///< ideal vertices whose half-lines attach at 0
    std::array<int, 2> end1{};    ///< ... and at k
};

struct FaceSpineGluing {
    int tet = 0;
    int face = 0;
    int other_tet = 0;
    int other_face = 0;
    FaceCase kind = FaceCase::Butterfly;
    Rational p;
    Rational q;
    Rational r;  ///< max{p,q} - min{p,q}
    Rational s;  ///< min{p,q}
};

struct SpineDescriptor {
    std::vector<TetrahedronSpine> tetrahedra;
    std::vector<FaceSpineGluing> faces;
};

/// Throws AdmissibilityError for inadmissible N.
SpineDescriptor spine_descriptor(const RationalVector& N, const IdealTriangulation& tri);

/// (r, s) for a face with incident quad values p and q.
std::pair<Rational, Rational> face_spine_parameters(const Rational& p, const Rational& q);

}  // namespace tropodegen
