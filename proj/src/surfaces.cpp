#include "tropodegen/surfaces.hpp"

#include "tropodegen/errors.hpp"
#include "tropodegen/tropical.hpp"

#include <algorithm>
#include <cctype>

namespace tropodegen {

namespace {

void require_matching(const GluingSystem& S, const RationalVector& N) {
    if (N.size() != 3 * S.tet_count) throw DimensionError("quad coordinate has the wrong length");
    const auto BN = to_rational(S.B).apply(N);
    for (std::size_t j = 0; j < BN.size(); ++j)
        if (BN[j] != 0) throw MatchingError("B N != 0 in row " + std::to_string(j));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

Rational nu_evaluate(const GluingSystem& S, const RationalVector& N, const PeripheralCurve& gamma) {
    require_matching(S, N);
    return dot(gamma.nu, N);
}

std::vector<PeripheralBasis> peripheral_basis(const IdealTriangulation& tri) {
    std::vector<PeripheralBasis> basis(tri.cusp_count());
    for (const auto& c : tri.curves()) {
        auto& b = basis.at(static_cast<std::size_t>(c.cusp));
        const auto name = lower(c.name);
        if ((name == "meridian" || name == "m") && !b.meridian) b.meridian = &c;
        if ((name == "longitude" || name == "l") && !b.longitude) b.longitude = &c;
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!basis[i].meridian || !basis[i].longitude)
            throw MissingBasisError("cusp " + std::to_string(i) + " has no meridian/longitude pair");
    return basis;
}

SlopeReport boundary_slopes(const GluingSystem& S, const RationalVector& N, const IdealTriangulation& tri) {
    require_matching(S, N);
    SlopeReport report;
    RationalVector boundary;
    const auto basis = peripheral_basis(tri);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CuspSlope cs;
        cs.cusp = static_cast<int>(i);
        cs.nu_meridian = dot(basis[i].meridian->nu, N);
        cs.nu_longitude = dot(basis[i].longitude->nu, N);
        if (cs.nu_meridian != 0)
            cs.slope = -cs.nu_longitude / cs.nu_meridian;
        else if (cs.nu_longitude == 0)
            cs.note = "foliation near cusp is T²×(0,1)";
        else
            cs.note = "slope undefined: nu(meridian) = 0";
        boundary.push_back(-cs.nu_longitude);
        boundary.push_back(cs.nu_meridian);
        report.cusps.push_back(std::move(cs));
    }
    report.boundary_vector = primitive_integer_multiple(boundary).vector;
    return report;
}

std::string to_string(Verdict v) {
    return v == Verdict::CertifiedNontrivial ? "CERTIFIED_NONTRIVIAL" : "UNDETERMINED";
}

Certificate nontriviality_certificate(const GluingSystem& S, const RationalVector& N,
                                      const std::vector<PeripheralCurve>& curves) {
    require_matching(S, N);
    Certificate cert;
    for (const auto& c : curves) {
        const Rational v = dot(c.nu, N);
        if (v != 0) {
            cert.verdict = Verdict::CertifiedNontrivial;
            cert.witness = c.name;
            cert.value = v;
            break;
        }
    }
    return cert;
}

IntegralSurface integral_surface(const RationalVector& N) {
    IntegralSurface out;
    auto scaled = primitive_integer_multiple(N);
    out.minimal = scaled.vector;
    out.scaling = scaled.factor;
    for (const auto& x : out.minimal) out.doubled.push_back(2 * x);
    if (std::all_of(N.begin(), N.end(), [](const Rational& x) { return x == 0; })) out.warning = "empty surface";
    return out;
}

std::string to_string(FaceCase c) {
    switch (c) {
        case FaceCase::Butterfly: return "butterfly";
        case FaceCase::Case1: return "case1";
        case FaceCase::Case2: return "case2";
    }
    return "?";
}

std::pair<Rational, Rational> face_spine_parameters(const Rational& p, const Rational& q) {
    const Rational lo = std::min(p, q);
    return {std::max(p, q) - lo, lo};
}

namespace {

/// Vertex paired with v by the quad of `label` (the quad separates the two
/// endpoints of each edge carrying that label from the other pair).
int quad_partner(const IdealTriangulation& tri, int tet, ShapeLabel label, int v) {
    for (int u = 0; u < 4; ++u)
        if (u != v && tri.edge_label(tet, v, u) == label) return u;
    throw std::logic_error("no edge with that label");
}

}  // namespace

SpineDescriptor spine_descriptor(const RationalVector& N, const IdealTriangulation& tri) {
    if (N.size() != 3 * tri.size()) throw DimensionError("quad coordinate has the wrong length");
    if (!is_admissible(N)) throw AdmissibilityError("quad coordinate is not admissible");
    SpineDescriptor d;
    for (std::size_t t = 0; t < tri.size(); ++t) {
        TetrahedronSpine s;
        s.tet = static_cast<int>(t);
        s.end0 = {0, 1};
        s.end1 = {2, 3};
        for (int l = 0; l < 3; ++l) {
            if (N[3 * t + l] == 0) continue;
            s.length = N[3 * t + l];
            s.quad = l;
            const int partner = quad_partner(tri, s.tet, l, 0);
            s.end0 = {0, partner};
            int k = 0;
            for (int u = 1; u < 4; ++u)
                if (u != partner) s.end1[k++] = u;
        }
        d.tetrahedra.push_back(s);
    }
    for (std::size_t t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(static_cast<int>(t), f);
            const int other_face = g.perm[f];
            if (g.tet < static_cast<int>(t) || (g.tet == static_cast<int>(t) && other_face < f)) continue;
            FaceSpineGluing fg;
            fg.tet = static_cast<int>(t);
            fg.face = f;
            fg.other_tet = g.tet;
            fg.other_face = other_face;
            const auto& a = d.tetrahedra[t];
            const auto& b = d.tetrahedra[static_cast<std::size_t>(g.tet)];
            fg.p = a.length;
            fg.q = b.length;
            std::tie(fg.r, fg.s) = face_spine_parameters(fg.p, fg.q);
            if (fg.p == 0 && fg.q == 0) {
                fg.kind = FaceCase::Butterfly;
            } else if (fg.p == 0 || fg.q == 0) {
                fg.kind = FaceCase::Case1;
            } else {
                // The long arm of each Y ends at the partner of the omitted vertex.
                const int arm_a = g.perm[quad_partner(tri, fg.tet, *a.quad, f)];
                const int arm_b = quad_partner(tri, fg.other_tet, *b.quad, other_face);
                fg.kind = arm_a == arm_b ? FaceCase::Case1 : FaceCase::Case2;
            }
            d.faces.push_back(fg);
        }
    return d;
}

}  // namespace tropodegen
