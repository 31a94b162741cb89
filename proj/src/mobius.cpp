#include "tropodegen/mobius.hpp"

#include "tropodegen/errors.hpp"

#include <Eigen/LU>

#include <cmath>
#include <deque>
#include <sstream>

namespace tropodegen {

namespace {

// [p, q] = p.x q.y - p.y q.x
Complex bracket(const CP1Point& p, const CP1Point& q) { return p.x * q.y - p.y * q.x; }

double hnorm(const CP1Point& p) { return std::sqrt(std::norm(p.x) + std::norm(p.y)); }

// Sends p1 -> 0, p2 -> infinity, p3 -> 1.
Mat2 to_standard(const std::array<CP1Point, 3>& p) {
    const Complex c = bracket(p[2], p[1]);
    const Complex d = bracket(p[2], p[0]);
    Mat2 m;
    m << c * p[0].y, -c * p[0].x, d * p[1].y, -d * p[1].x;
    return m;
}

Mat2 normalize(Mat2 m) {
    const Complex det = m.determinant();
    if (std::abs(det) == 0 || !std::isfinite(std::abs(det))) throw DegenerateTripleError("singular Mobius matrix");
    return m / std::sqrt(det);
}

int parity(int a, int b, int c, int d) {
    const int p[4] = {a, b, c, d};
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

bool CP1Point::is_infinite(double eps) const { return std::abs(y) <= eps * std::abs(x); }

Complex CP1Point::value() const {
    if (y == Complex(0)) throw DomainError("point at infinity has no finite value");
    return x / y;
}

std::string CP1Point::str() const {
    if (is_infinite()) return "inf";
    std::ostringstream s;
    s.precision(12);
    const Complex v = value();
    s << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    return s.str();
}

double chordal_distance(const CP1Point& a, const CP1Point& b) {
    return std::abs(bracket(a, b)) / (hnorm(a) * hnorm(b));
}

CP1Point apply(const Mat2& m, const CP1Point& p) {
    CP1Point q{m(0, 0) * p.x + m(0, 1) * p.y, m(1, 0) * p.x + m(1, 1) * p.y};
    const double s = hnorm(q);
    if (s > 0) {
        q.x /= s;
        q.y /= s;
    }
    return q;
}

Complex cross_ratio(const CP1Point& a, const CP1Point& b, const CP1Point& c, const CP1Point& d) {
    const Complex num = bracket(a, c) * bracket(b, d);
    const Complex den = bracket(a, d) * bracket(b, c);
    if (den == Complex(0)) throw DomainError("cross ratio is infinite or undefined");
    return num / den;
}

Mat2 mobius_from_triples(const std::array<CP1Point, 3>& src, const std::array<CP1Point, 3>& dst) {
    for (const auto* t : {&src, &dst})
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (chordal_distance((*t)[i], (*t)[j]) < 1e-14)
                    throw DegenerateTripleError("triple contains a repeated point");
    const Mat2 s = to_standard(src);
    const Mat2 d = to_standard(dst);
    return normalize(d.inverse() * s);
}

Complex trace_squared(const Mat2& m) {
    const Complex tr = m.trace();
    return tr * tr / m.determinant();
}

std::array<CP1Point, 4> standard_placement(const IdealTriangulation& tri, const ShapeAssignment& Z, int tet) {
    const Complex z = Z[static_cast<std::size_t>(tet)][0];
    if (z == Complex(0) || z == Complex(1)) throw DomainError("degenerate shape");
    const std::array<CP1Point, 4> frame{CP1Point::infinity(), CP1Point::finite(0), CP1Point::finite(1),
                                        CP1Point::finite(z)};
    if (tri.orientation(tet) > 0) return frame;
    return {frame[0], frame[1], frame[3], frame[2]};
}

Complex edge_cross_ratio(const IdealTriangulation& tri, int tet, const std::array<CP1Point, 4>& x, int a, int b) {
    int c = -1, d = -1;
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b) (c < 0 ? c : d) = v;
    if (parity(a, b, c, d) != tri.orientation(tet)) std::swap(c, d);
    return cross_ratio(x[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(b)],
                       x[static_cast<std::size_t>(c)], x[static_cast<std::size_t>(d)]);
}

namespace {

// Places tetrahedron g.tet across face `face` of a tetrahedron at `pos`.
std::array<CP1Point, 4> place_neighbour(const IdealTriangulation& tri, const ShapeAssignment& Z,
                                        const std::array<CP1Point, 4>& pos, int face, const FaceGluing& g) {
    const auto frame = standard_placement(tri, Z, g.tet);
    std::array<CP1Point, 3> src, dst;
    std::array<CP1Point, 4> out;
    int k = 0;
    for (int v = 0; v < 4; ++v) {
        if (v == face) continue;
        const int w = g.perm[v];
        src[static_cast<std::size_t>(k)] = frame[static_cast<std::size_t>(w)];
        dst[static_cast<std::size_t>(k)] = pos[static_cast<std::size_t>(v)];
        out[static_cast<std::size_t>(w)] = pos[static_cast<std::size_t>(v)];
        ++k;
    }
    const Mat2 m = mobius_from_triples(src, dst);
    const int apex = g.perm[face];
    out[static_cast<std::size_t>(apex)] = tropodegen::apply(m, frame[static_cast<std::size_t>(apex)]);
    return out;
}

Mat2 map_tetrahedron(const std::array<CP1Point, 4>& from, const std::array<CP1Point, 4>& to, int skip) {
    std::array<CP1Point, 3> s, d;
    int k = 0;
    for (int v = 0; v < 4 && k < 3; ++v) {
        if (v == skip) continue;
        s[static_cast<std::size_t>(k)] = from[static_cast<std::size_t>(v)];
        d[static_cast<std::size_t>(k)] = to[static_cast<std::size_t>(v)];
        ++k;
    }
    return mobius_from_triples(s, d);
}

}  // namespace

Development develop(const IdealTriangulation& tri, const ShapeAssignment& Z, double tolerance) {
    const std::size_t n = tri.size();
    if (Z.size() != n) throw DimensionError("shape assignment does not match triangulation");
    for (const auto& t : Z.triples())
        if (t[0] == Complex(0) || t[0] == Complex(1)) throw DomainError("degenerate shape");

    const auto S = build_gluing_system(tri);
    double worst = 0;
    for (const auto& r : gluing_residuals(S, Z)) worst = std::max(worst, std::abs(r));
    if (!(worst <= tolerance))
        throw ConsistencyError("edge equations do not close up (residual " + std::to_string(worst) + ")");

    Development dev;
    dev.tetrahedra.resize(n);
    std::vector<bool> placed(n, false);
    std::vector<std::array<bool, 4>> tree_face(n, {false, false, false, false});
    dev.tetrahedra[0].tet = 0;
    dev.tetrahedra[0].vertices = standard_placement(tri, Z, 0);
    placed[0] = true;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int t = queue.front();
        queue.pop_front();
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (placed[static_cast<std::size_t>(g.tet)]) continue;
            auto& d = dev.tetrahedra[static_cast<std::size_t>(g.tet)];
            d.tet = g.tet;
            d.parent = t;
            d.via_face = g.perm[f];
            d.vertices = place_neighbour(tri, Z, dev.tetrahedra[static_cast<std::size_t>(t)].vertices, f, g);
            placed[static_cast<std::size_t>(g.tet)] = true;
            tree_face[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] = true;
            tree_face[static_cast<std::size_t>(g.tet)][static_cast<std::size_t>(g.perm[f])] = true;
            queue.push_back(g.tet);
        }
    }

    for (auto& d : dev.tetrahedra) {
        d.cross_ratio = edge_cross_ratio(tri, d.tet, d.vertices, 0, 1);
        if (std::abs(d.cross_ratio - Z[static_cast<std::size_t>(d.tet)][0]) > tolerance * (1 + std::abs(d.cross_ratio)))
            throw ConsistencyError("developed tetrahedron " + std::to_string(d.tet) + " has the wrong shape");
    }

    for (std::size_t t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (tree_face[t][static_cast<std::size_t>(f)]) continue;
            const auto& g = tri.gluing(static_cast<int>(t), f);
            const int of = g.perm[f];
            if (g.tet < static_cast<int>(t) || (g.tet == static_cast<int>(t) && of < f)) continue;
            FacePairing p;
            p.tet = static_cast<int>(t);
            p.face = f;
            p.other_tet = g.tet;
            p.other_face = of;
            const auto& here = dev.tetrahedra[t].vertices;
            const auto& there = dev.tetrahedra[static_cast<std::size_t>(g.tet)].vertices;
            std::array<CP1Point, 4> image;
            for (int v = 0; v < 4; ++v) image[static_cast<std::size_t>(g.perm[v])] = here[static_cast<std::size_t>(v)];
            p.matrix = map_tetrahedron(there, image, of);
            for (const auto& d : dev.tetrahedra)
                for (const auto& x : d.vertices)
                    if (!p.fixed_point && chordal_distance(tropodegen::apply(p.matrix, x), x) < 1e-9) p.fixed_point = x;
            p.peripheral = p.fixed_point.has_value();
            dev.pairings.push_back(std::move(p));
        }

    for (const auto& c : tri.curves()) {
        CurveHolonomy h;
        h.name = c.name;
        h.matrix = curve_holonomy(tri, Z, c);
        h.trace_squared = trace_squared(h.matrix);
        dev.curves.push_back(std::move(h));
    }
    return dev;
}

Mat2 curve_holonomy(const IdealTriangulation& tri, const ShapeAssignment& Z, const PeripheralCurve& gamma) {
    if (gamma.path.empty()) return Mat2::Identity();
    if (Z.size() != tri.size()) throw DimensionError("shape assignment does not match triangulation");
    const int start = gamma.path.front().tet;
    const auto origin = standard_placement(tri, Z, start);
    auto pos = origin;
    for (const auto& step : gamma.path) {
        const auto& g = tri.gluing(step.tet, step.out);
        pos = place_neighbour(tri, Z, pos, step.out, g);
    }
    // The last crossing lands back on the first tetrahedron.
    return map_tetrahedron(origin, pos, -1);
}

}  // namespace tropodegen
