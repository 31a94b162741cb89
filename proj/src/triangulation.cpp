#include "tropodegen/triangulation.hpp"

#include "tropodegen/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace tropodegen {

namespace {

constexpr std::array<std::array<int, 2>, 6> kEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kEdges[e][0] == a && kEdges[e][1] == b) return e;
    throw std::invalid_argument("not an edge of the tetrahedron");
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::string face_str(int tet, int face) {
    return "(" + std::to_string(tet) + "," + std::to_string(face) + ")";
}

}  // namespace

Perm4::Perm4(std::array<int, 4> image) : image_(image) {
    std::array<bool, 4> seen{};
    for (int v : image_) {
        if (v < 0 || v > 3 || seen[v]) throw SchemaError("not a permutation of {0,1,2,3}: " + str());
        seen[v] = true;
    }
}

Perm4 Perm4::inverse() const {
    std::array<int, 4> inv{};
    for (int i = 0; i < 4; ++i) inv[image_[i]] = i;
    return Perm4(inv);
}

Perm4 operator*(const Perm4& a, const Perm4& b) {
    std::array<int, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = a[b[i]];
    return Perm4(out);
}

int Perm4::sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (image_[i] > image_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::string Perm4::str() const {
    std::string s;
    for (int v : image_) s += std::to_string(v);
    return s;
}

ShapeLabel standard_edge_label(int a, int b) {
    if (a > b) std::swap(a, b);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 0;
    if ((a == 0 && b == 2) || (a == 1 && b == 3)) return 1;
    if ((a == 0 && b == 3) || (a == 1 && b == 2)) return 2;
    throw std::invalid_argument("not an edge of the tetrahedron");
}

IntVector EdgeClass::exponent_row(std::size_t tet_count) const {
    IntVector row(3 * tet_count, Integer(0));
    for (const auto& m : members) row[3 * static_cast<std::size_t>(m.tet) + m.label] += 1;
    return row;
}

IdealTriangulation::IdealTriangulation(std::vector<std::array<FaceGluing, 4>> gluings)
    : gluings_(std::move(gluings)) {
    const int n = static_cast<int>(gluings_.size());
    if (n == 0) throw SchemaError("triangulation has no tetrahedra");

    // Pairings: in range, consistent faces, each face claimed once, mutually inverse.
    std::vector<int> claims(4 * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[i][f];
            if (g.tet < 0 || g.tet >= n)
                throw SchemaError("face " + face_str(i, f) + " glued to missing tetrahedron " +
                                  std::to_string(g.tet));
            claims[4 * g.tet + g.perm[f]] += 1;
        }
    for (int j = 0; j < n; ++j)
        for (int g = 0; g < 4; ++g)
            if (claims[4 * j + g] != 1)
                throw GluingError("face " + face_str(j, g) + " is paired " +
                                  std::to_string(claims[4 * j + g]) + " times");
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[i][f];
            const int face = g.perm[f];
            if (g.tet == i && face == f) throw GluingError("face " + face_str(i, f) + " is glued to itself");
            const auto& back = gluings_[g.tet][face];
            if (back.tet != i || !(back.perm == g.perm.inverse()))
                throw GluingError("pairing of " + face_str(i, f) + " and " + face_str(g.tet, face) +
                                  " is not mutually inverse");
        }

    // Coherent orientation: glued tetrahedra i, j need o_i * o_j * sign(perm) = -1.
    orientation_.assign(n, 0);
    orientation_[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[i][f];
            const int want = -orientation_[i] * g.perm.sign();
            if (orientation_[g.tet] == 0) {
                orientation_[g.tet] = want;
                stack.push_back(g.tet);
            } else if (orientation_[g.tet] != want) {
                throw OrientabilityError("no coherent orientation: conflict across face " + face_str(i, f));
            }
        }
    }
    if (std::find(orientation_.begin(), orientation_.end(), 0) != orientation_.end())
        throw TopologyError("triangulation is not connected");

    // Edge classes.
    UnionFind edges(6 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[i][f];
            for (int e = 0; e < 6; ++e) {
                const auto [a, b] = kEdges[e];
                if (a == f || b == f) continue;
                edges.unite(6 * i + e, 6 * g.tet + edge_index(g.perm[a], g.perm[b]));
            }
        }
    std::map<int, std::vector<EdgeIncidence>> by_root;
    std::vector<int> root_order;
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 6; ++e) {
            const int root = edges.find(6 * i + e);
            if (!by_root.count(root)) root_order.push_back(root);
            const auto [a, b] = kEdges[e];
            by_root[root].push_back({i, a, b, edge_label(i, a, b)});
        }
    // Order classes by exponent row, ties by first appearance.
    std::vector<std::pair<IntVector, int>> keyed;
    for (std::size_t k = 0; k < root_order.size(); ++k) {
        EdgeClass c;
        c.members = by_root[root_order[k]];
        keyed.emplace_back(c.exponent_row(gluings_.size()), static_cast<int>(k));
    }
    std::stable_sort(keyed.begin(), keyed.end());
    edge_class_index_.assign(n, {});
    for (std::size_t id = 0; id < keyed.size(); ++id) {
        EdgeClass c;
        c.id = static_cast<int>(id);
        c.members = by_root[root_order[keyed[id].second]];
        for (const auto& m : c.members) edge_class_index_[m.tet][edge_index(m.a, m.b)] = c.id;
        edge_classes_.push_back(std::move(c));
    }

    // Cusps: classes of ideal vertices.
    UnionFind verts(4 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[i][f];
            for (int v = 0; v < 4; ++v)
                if (v != f) verts.unite(4 * i + v, 4 * g.tet + g.perm[v]);
        }
    std::map<int, int> cusp_id;
    cusp_index_.assign(n, {});
    for (int i = 0; i < n; ++i)
        for (int v = 0; v < 4; ++v) {
            const int root = verts.find(4 * i + v);
            auto it = cusp_id.find(root);
            if (it == cusp_id.end()) it = cusp_id.emplace(root, static_cast<int>(cusp_id.size())).first;
            cusp_index_[i][v] = it->second;
        }
    cusp_count_ = cusp_id.size();
}

const FaceGluing& IdealTriangulation::gluing(int tet, int face) const {
    return gluings_.at(static_cast<std::size_t>(tet)).at(static_cast<std::size_t>(face));
}

ShapeLabel IdealTriangulation::edge_label(int tet, int a, int b) const {
    const ShapeLabel l = standard_edge_label(a, b);
    if (orientation(tet) > 0 || l == 0) return l;
    return 3 - l;
}

int IdealTriangulation::edge_class_of(int tet, int a, int b) const {
    return edge_class_index_.at(static_cast<std::size_t>(tet))[edge_index(a, b)];
}

int IdealTriangulation::cusp_of(int tet, int vertex) const {
    return cusp_index_.at(static_cast<std::size_t>(tet)).at(static_cast<std::size_t>(vertex));
}

std::array<int, 3> IdealTriangulation::ccw_corners(int tet, int vertex) const {
    std::array<int, 3> out{};
    for (int u = 0; u < 4; ++u)
        if (u != vertex) out[edge_label(tet, vertex, u)] = u;
    return out;
}

const PeripheralCurve& IdealTriangulation::curve(const std::string& curve_name) const {
    for (const auto& c : curves_)
        if (c.name == curve_name) return c;
    throw PathError("no peripheral curve named '" + curve_name + "'");
}

std::vector<EdgeClass> edge_classes(const IdealTriangulation& tri) { return tri.edge_classes(); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

using nlohmann::json;

int require_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw SchemaError(std::string("expected integer for ") + what);
    return j.get<int>();
}

std::vector<PathStep> parse_path(const json& path) {
    if (!path.is_array()) throw SchemaError("curve path must be an array");
    std::vector<PathStep> steps;
    for (const auto& s : path) {
        if (!s.is_object() || !s.contains("tri") || !s.contains("in") || !s.contains("out"))
            throw SchemaError("path step needs 'tri', 'in', 'out'");
        const auto& t = s["tri"];
        if (!t.is_array() || t.size() != 2) throw SchemaError("'tri' must be [tet, vertex]");
        steps.push_back({require_int(t[0], "tri tet"), require_int(t[1], "tri vertex"),
                         require_int(s["in"], "in"), require_int(s["out"], "out")});
    }
    return steps;
}

std::vector<std::string> parse_names(const json& doc, const char* key, std::size_t n, const std::string& stem) {
    std::vector<std::string> names;
    if (doc.contains(key)) {
        const auto& a = doc[key];
        if (!a.is_array() || a.size() != n) throw SchemaError(std::string("'") + key + "' must list one name per tetrahedron");
        for (const auto& s : a) {
            if (!s.is_string()) throw SchemaError(std::string("'") + key + "' entries must be strings");
            names.push_back(s.get<std::string>());
        }
        return names;
    }
    for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i));
    return names;
}

}  // namespace

IdealTriangulation parse_triangulation(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("document must be a JSON object");
    if (!doc.contains("tetrahedra") || !doc.contains("gluings")) throw SchemaError("missing 'tetrahedra' or 'gluings'");
    const int n = require_int(doc["tetrahedra"], "'tetrahedra'");
    if (n <= 0) throw SchemaError("'tetrahedra' must be positive");
    const auto& gl = doc["gluings"];
    if (!gl.is_array() || gl.size() != static_cast<std::size_t>(n))
        throw SchemaError("'gluings' must have one entry per tetrahedron");

    std::vector<std::array<FaceGluing, 4>> gluings(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& faces = gl[i];
        if (!faces.is_array() || faces.size() != 4) throw SchemaError("each tetrahedron needs 4 face gluings");
        for (int f = 0; f < 4; ++f) {
            const auto& e = faces[f];
            if (!e.is_object() || !e.contains("tet") || !e.contains("perm")) throw SchemaError("gluing needs 'tet' and 'perm'");
            const auto& p = e["perm"];
            if (!p.is_array() || p.size() != 4) throw SchemaError("'perm' must have 4 entries");
            std::array<int, 4> img{};
            for (int k = 0; k < 4; ++k) img[k] = require_int(p[k], "perm entry");
            gluings[i][f] = {require_int(e["tet"], "'tet'"), Perm4(img)};
        }
    }

    IdealTriangulation tri(std::move(gluings));
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw SchemaError("'name' must be a string");
        tri.name = doc["name"].get<std::string>();
    }
    tri.shape_names = parse_names(doc, "shape_names", tri.size(), "z");
    tri.quad_names = parse_names(doc, "quad_names", tri.size(), "q");

    if (doc.contains("peripheral_curves")) {
        const auto& curves = doc["peripheral_curves"];
        if (!curves.is_array()) throw SchemaError("'peripheral_curves' must be an array");
        for (const auto& c : curves) {
            if (!c.is_object() || !c.contains("cusp") || !c.contains("name") || !c.contains("path"))
                throw SchemaError("curve needs 'cusp', 'name' and 'path'");
            if (!c["name"].is_string()) throw SchemaError("curve 'name' must be a string");
            auto curve = validate_curve(tri, c["name"].get<std::string>(), parse_path(c["path"]));
            if (curve.cusp != require_int(c["cusp"], "curve cusp"))
                throw PathError("curve '" + curve.name + "' does not lie on cusp " + c["cusp"].dump());
            tri.add_curve(std::move(curve));
        }
    }
    return tri;
}

IdealTriangulation load_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open triangulation file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_triangulation(ss.str());
}

// ---------------------------------------------------------------------------
// Cusp triangulations and curves

PathStep cross_side(const IdealTriangulation& tri, int tet, int vertex, int side) {
    const auto& g = tri.gluing(tet, side);
    return {g.tet, g.perm[vertex], g.perm[side], -1};
}

int CuspTriangulation::triangle_index(int tet, int vertex) const {
    for (std::size_t k = 0; k < triangles.size(); ++k)
        if (triangles[k].tet == tet && triangles[k].vertex == vertex) return static_cast<int>(k);
    return -1;
}

CuspTriangulation cusp_triangulation(const IdealTriangulation& tri, int cusp) {
    if (cusp < 0 || static_cast<std::size_t>(cusp) >= tri.cusp_count())
        throw std::out_of_range("no cusp " + std::to_string(cusp));
    CuspTriangulation ct;
    ct.cusp = cusp;
    const int n = static_cast<int>(tri.size());
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            if (tri.cusp_of(t, v) == cusp) ct.triangles.push_back({t, v, tri.ccw_corners(t, v), {}});

    // Corners (triangle k, slot s) are merged across each side they touch.
    const std::size_t m = ct.triangles.size();
    UnionFind corners(3 * m);
    for (std::size_t k = 0; k < m; ++k) {
        auto& tr = ct.triangles[k];
        for (int s = 0; s < 3; ++s) {
            const int side = tr.ccw[s];
            const auto& g = tri.gluing(tr.tet, side);
            if (g.tet == tr.tet && g.perm[side] == side && g.perm[tr.vertex] == tr.vertex)
                throw TopologyError("cusp triangle side glued to itself");
            const int nk = ct.triangle_index(g.tet, g.perm[tr.vertex]);
            if (nk < 0) throw TopologyError("cusp link is not closed");
            tr.neighbours[s] = nk;
            const auto& ntr = ct.triangles[nk];
            for (int s2 = 0; s2 < 3; ++s2) {
                const int u = tr.ccw[s2];
                if (u == side) continue;
                const int nu = g.perm[u];
                const int ns = static_cast<int>(std::find(ntr.ccw.begin(), ntr.ccw.end(), nu) - ntr.ccw.begin());
                corners.unite(static_cast<int>(3 * k) + s2, 3 * nk + ns);
            }
        }
    }
    ct.edge_count = 3 * m / 2;
    std::map<int, std::size_t> vid;
    for (std::size_t k = 0; k < m; ++k)
        for (int s = 0; s < 3; ++s) {
            const int root = corners.find(static_cast<int>(3 * k) + s);
            auto it = vid.find(root);
            const auto& tr = ct.triangles[k];
            if (it == vid.end()) {
                it = vid.emplace(root, ct.vertices.size()).first;
                ct.vertices.push_back({tri.edge_class_of(tr.tet, tr.vertex, tr.ccw[s]), {}});
            }
            ct.vertices[it->second].corners.emplace_back(tr.tet, s);
        }
    return ct;
}

namespace {

IntVector normalise_mu(IntVector raw, int& sign) {
    sign = 1;
    for (std::size_t t = 0; 3 * t < raw.size(); ++t) {
        const Integer k = raw[3 * t + 2];
        for (int l = 0; l < 3; ++l) raw[3 * t + l] -= k;
        if (boost::multiprecision::abs(k) % 2 == 1) sign = -sign;
    }
    return raw;
}

}  // namespace

PeripheralCurve validate_curve(const IdealTriangulation& tri, std::string name, std::vector<PathStep> path) {
    if (path.empty()) throw PathError("curve '" + name + "' has an empty path");
    const int n = static_cast<int>(tri.size());
    for (const auto& s : path) {
        auto bad = [&](const char* msg) {
            return PathError("curve '" + name + "': " + msg + " at step [" + std::to_string(s.tet) + "," +
                             std::to_string(s.vertex) + "] in=" + std::to_string(s.in) + " out=" + std::to_string(s.out));
        };
        if (s.tet < 0 || s.tet >= n || s.vertex < 0 || s.vertex > 3) throw bad("no such cusp triangle");
        if (s.in < 0 || s.in > 3 || s.out < 0 || s.out > 3 || s.in == s.vertex || s.out == s.vertex)
            throw bad("not a side of the triangle");
        if (s.in == s.out) throw bad("entry and exit side coincide");
    }
    const int cusp = tri.cusp_of(path.front().tet, path.front().vertex);
    for (std::size_t k = 0; k < path.size(); ++k) {
        const auto& s = path[k];
        if (tri.cusp_of(s.tet, s.vertex) != cusp) throw PathError("curve '" + name + "' leaves its cusp");
        const auto next = cross_side(tri, s.tet, s.vertex, s.out);
        const auto& want = path[(k + 1) % path.size()];
        if (next.tet != want.tet || next.vertex != want.vertex || next.in != want.in)
            throw PathError("curve '" + name + "': step " + std::to_string(k) +
                            (k + 1 == path.size() ? " does not close up" : " is not adjacent to the next step"));
    }

    PeripheralCurve c;
    c.cusp = cusp;
    c.name = std::move(name);
    IntVector raw(3 * tri.size(), Integer(0));
    c.nu.assign(3 * tri.size(), Integer(0));
    for (const auto& s : path) {
        const auto ccw = tri.ccw_corners(s.tet, s.vertex);
        int corner = 0;
        while (corner == s.vertex || corner == s.in || corner == s.out) ++corner;
        const int i = static_cast<int>(std::find(ccw.begin(), ccw.end(), corner) - ccw.begin());
        // Counterclockwise (corner, out, in) puts the corner on the left.
        const int side = (ccw[(i + 1) % 3] == s.out) ? 1 : -1;
        const std::size_t base = 3 * static_cast<std::size_t>(s.tet);
        raw[base + tri.edge_label(s.tet, s.vertex, corner)] += side;
        // Q-modulus of the corner: with (corner, u, t) clockwise it is q(u) - q(t),
        // the side [corner, t] carrying u's label and [corner, u] carrying t's.
        const int u = ccw[(i + 2) % 3];
        const int t = ccw[(i + 1) % 3];
        c.nu[base + tri.edge_label(s.tet, s.vertex, u)] += side;
        c.nu[base + tri.edge_label(s.tet, s.vertex, t)] -= side;
    }
    c.mu = normalise_mu(std::move(raw), c.sign);
    c.path = std::move(path);
    return c;
}

std::vector<PeripheralCurve> find_peripheral_cycles(const IdealTriangulation& tri, int cusp, std::size_t max_length) {
    const auto ct = cusp_triangulation(tri, cusp);
    const std::size_t dim = 3 * tri.size();
    // Relations: gluing rows and (1,1,1) per tetrahedron.
    std::vector<RationalVector> relations;
    for (const auto& ec : tri.edge_classes()) relations.push_back(to_rational(ec.exponent_row(tri.size())));
    for (std::size_t t = 0; t < tri.size(); ++t) {
        RationalVector v(dim, Rational(0));
        for (int l = 0; l < 3; ++l) v[3 * t + l] = 1;
        relations.push_back(v);
    }
    auto rank_of = [&](const std::vector<RationalVector>& rows) {
        Matrix<Rational> m(rows.size(), dim);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c];
        return dim - null_space(m).size();
    };
    std::size_t base_rank = rank_of(relations);
    std::vector<PeripheralCurve> found;

    for (std::size_t len = 1; len <= max_length && found.size() < 2; ++len) {
        std::vector<PathStep> path;
        std::function<bool(const PathStep&)> extend = [&](const PathStep& at) -> bool {
            for (int out : ct.triangles[ct.triangle_index(at.tet, at.vertex)].ccw) {
                if (out == at.in) continue;
                path.push_back({at.tet, at.vertex, at.in, out});
                const auto next = cross_side(tri, at.tet, at.vertex, out);
                const auto& first = path.front();
                if (path.size() == len) {
                    if (next.tet == first.tet && next.vertex == first.vertex && next.in == first.in) {
                        auto c = validate_curve(tri, found.empty() ? "cycle_a" : "cycle_b", path);
                        auto rows = relations;
                        rows.push_back(to_rational(c.mu));
                        const auto r = rank_of(rows);
                        if (r > base_rank) {
                            relations = std::move(rows);
                            base_rank = r;
                            found.push_back(std::move(c));
                            if (found.size() == 2) return true;
                        }
                    }
                } else if (extend(next)) {
                    return true;
                }
                path.pop_back();
            }
            return false;
        };
        for (const auto& tr : ct.triangles) {
            for (int in : tr.ccw) {
                path.clear();
                if (extend({tr.tet, tr.vertex, in, -1})) break;
            }
            if (found.size() == 2) break;
        }
    }
    return found;
}

}  // namespace tropodegen
