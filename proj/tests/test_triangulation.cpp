#include "helpers.hpp"
#include "oracles.hpp"

#include "tropodegen/errors.hpp"
#include "tropodegen/equations.hpp"
#include "tropodegen/fixtures.hpp"
#include "tropodegen/triangulation.hpp"

#include <doctest.h>

#include <random>

using namespace tropodegen;

namespace {

std::string one_tet(const std::string& perms) {
    return R"({"tetrahedra": 1, "gluings": [[)" + perms + "]]}";
}

}  // namespace

TEST_CASE("fig8 fixture parses with two edge classes and one torus cusp") {
    const auto T = fig8_triangulation();
    CHECK(T.size() == 2);
    CHECK(T.edge_classes().size() == 2);
    CHECK(T.cusp_count() == 1);
    std::size_t degrees = 0;
    for (const auto& e : T.edge_classes()) {
        CHECK(e.degree() >= 1);
        degrees += e.degree();
    }
    CHECK(degrees == 6 * T.size());
    const auto link = cusp_triangulation(T, 0);
    CHECK(link.triangles.size() == 8);
    CHECK(link.euler_characteristic() == 0);
    CHECK(edge_classes(T).size() == T.size());
    CHECK(T.shape_names == std::vector<std::string>{"w", "z"});
}

TEST_CASE("face pairings are involutions") {
    const auto T = fig8_triangulation();
    for (int t = 0; t < 2; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = T.gluing(t, f);
            const auto& back = T.gluing(g.tet, g.perm[f]);
            CHECK(back.tet == t);
            CHECK(back.perm * g.perm == Perm4());
        }
}

TEST_CASE("doubly paired face is a gluing error") {
    // Face (0,0) is the target of both (0,1) and (1,2).
    const std::string doc = R"({"tetrahedra": 2, "gluings": [
        [{"tet": 0, "perm": [1,0,2,3]}, {"tet": 0, "perm": [1,0,2,3]}, {"tet": 1, "perm": [0,1,3,2]}, {"tet": 1, "perm": [0,1,3,2]}],
        [{"tet": 1, "perm": [1,0,2,3]}, {"tet": 1, "perm": [1,0,2,3]}, {"tet": 0, "perm": [1,2,0,3]}, {"tet": 0, "perm": [0,1,3,2]}]]})";
    CHECK_THROWS_AS(parse_triangulation(doc), GluingError);
}

TEST_CASE("non-inverse pairings are rejected") {
    const std::string doc = one_tet(R"({"tet": 0, "perm": [1,0,2,3]}, {"tet": 0, "perm": [1,0,3,2]},
                                       {"tet": 0, "perm": [0,1,3,2]}, {"tet": 0, "perm": [0,1,3,2]})");
    CHECK_THROWS_AS(parse_triangulation(doc), GluingError);
}

TEST_CASE("Gieseking-style self gluing is not orientable") {
    std::vector<std::array<FaceGluing, 4>> g(1);
    const Perm4 p({1, 0, 3, 2});
    for (int f = 0; f < 4; ++f) g[0][static_cast<std::size_t>(f)] = {0, p};
    CHECK_FALSE(oracle::orientable_brute_force(g));
    CHECK_THROWS_AS(IdealTriangulation{g}, OrientabilityError);
    const std::string doc = one_tet(R"({"tet": 0, "perm": [1,0,3,2]}, {"tet": 0, "perm": [1,0,3,2]},
                                       {"tet": 0, "perm": [1,0,3,2]}, {"tet": 0, "perm": [1,0,3,2]})");
    CHECK_THROWS_AS(parse_triangulation(doc), OrientabilityError);
}

TEST_CASE("orientability agrees with the brute-force oracle") {
    std::mt19937 rng(7);
    int orientable = 0, not_orientable = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto g = testing_helpers::random_gluings(n, rng, trial % 2 == 0);
        const bool expect = oracle::orientable_brute_force(g);
        bool orientation_error = false;
        try {
            IdealTriangulation T(g);
            for (std::size_t t = 0; t < n; ++t)
                for (int f = 0; f < 4; ++f) {
                    const auto& fg = g[t][static_cast<std::size_t>(f)];
                    CHECK(T.orientation(static_cast<int>(t)) * T.orientation(fg.tet) * fg.perm.sign() == -1);
                }
        } catch (const OrientabilityError&) {
            orientation_error = true;
        } catch (const TopologyError&) {
            continue;  // disconnected
        }
        CHECK(orientation_error == !expect);
        (expect ? orientable : not_orientable) += 1;
    }
    CHECK(orientable > 0);
    CHECK(not_orientable > 0);
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(parse_triangulation("{"), SchemaError);
    CHECK_THROWS_AS(parse_triangulation("[]"), SchemaError);
    CHECK_THROWS_AS(parse_triangulation(R"({"tetrahedra": 1})"), SchemaError);
    CHECK_THROWS_AS(parse_triangulation(one_tet(R"({"tet": 0, "perm": [1,1,2,3]}, {"tet": 0, "perm": [1,0,2,3]},
                                                   {"tet": 0, "perm": [0,1,3,2]}, {"tet": 0, "perm": [0,1,3,2]})")),
                    SchemaError);
    CHECK_THROWS_AS(parse_triangulation(one_tet(R"({"tet": 3, "perm": [1,0,2,3]}, {"tet": 0, "perm": [1,0,2,3]},
                                                   {"tet": 0, "perm": [0,1,3,2]}, {"tet": 0, "perm": [0,1,3,2]})")),
                    SchemaError);
    CHECK_THROWS_AS(load_triangulation("/nonexistent/fig8.json"), SchemaError);
}

TEST_CASE("fixture curves carry the expected holonomy exponents") {
    const auto T = fig8_triangulation();
    const auto& M = T.curve("meridian");
    const auto& L = T.curve("longitude");
    CHECK(M.mu == IntVector{1, 0, 0, 0, -1, 0});
    CHECK(M.sign == 1);
    CHECK(L.mu == IntVector{0, 0, 0, 2, -2, 0});
    CHECK(L.sign == 1);
    // nu(M) = -p' + p'' - q + q'', nu(L) = -2q - 2q' + 4q''
    CHECK(M.nu == IntVector{0, -1, 1, -1, 0, 1});
    CHECK(L.nu == IntVector{0, 0, 0, -2, -2, 4});
    CHECK_THROWS_AS(T.curve("nope"), PathError);
}

TEST_CASE("invalid paths") {
    const auto T = fig8_triangulation();
    CHECK_THROWS_AS(validate_curve(T, "empty", {}), PathError);
    CHECK_THROWS_AS(validate_curve(T, "open", {{0, 1, 2, 3}}), PathError);
    CHECK_THROWS_AS(validate_curve(T, "bad side", {{0, 1, 1, 3}}), PathError);
    CHECK_THROWS_AS(validate_curve(T, "range", {{5, 1, 2, 3}}), PathError);
    auto path = T.curve("meridian").path;
    std::swap(path[0], path[1]);
    path[0].out = path[0].in;
    CHECK_THROWS_AS(validate_curve(T, "jump", path), PathError);
}

TEST_CASE("nu equals mu times C_n^T on fixture and random closed paths") {
    const auto T = fig8_triangulation();
    for (const auto& c : T.curves()) CHECK(c.nu == oracle::row_times_cn_transpose(c.mu));
    std::mt19937 rng(11);
    for (int k = 0; k < 100; ++k) {
        const auto path = oracle::random_closed_path(T, rng, 1 + k % 12);
        const auto c = validate_curve(T, "random", path);
        CHECK(c.nu == oracle::row_times_cn_transpose(c.mu));
    }
}

TEST_CASE("nu equals mu times C_n^T on random orientable triangulations") {
    std::mt19937 rng(12);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = testing_helpers::random_gluings(1 + trial % 4, rng, true);
        std::optional<IdealTriangulation> T;
        try {
            T.emplace(g);
        } catch (const Error&) {
            continue;
        }
        for (int k = 0; k < 5; ++k) {
            const auto c = validate_curve(*T, "random", oracle::random_closed_path(*T, rng, 1 + k * 3));
            CHECK(c.nu == oracle::row_times_cn_transpose(c.mu));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("loops around cusp vertices recover the edge equations") {
    // The small loop around a cusp-triangulation vertex has Q-modulus sum
    // equal to a row of B up to sign.
    std::mt19937 rng(5);
    std::vector<IdealTriangulation> tris{fig8_triangulation()};
    for (int trial = 0; trial < 40 && tris.size() < 12; ++trial) {
        try {
            tris.emplace_back(testing_helpers::random_gluings(2 + trial % 3, rng, true));
        } catch (const Error&) {
        }
    }
    for (const auto& T : tris) {
        const auto S = build_gluing_system(T);
        for (std::size_t j = 0; j < T.edge_classes().size(); ++j) {
            const auto& e = T.edge_classes()[j];
            const auto& m = e.members.front();
            // Walk around the ideal edge {a, b} inside the cusp at vertex a.
            std::vector<PathStep> path;
            int tet = m.tet, v = m.a, corner = m.b;
            int in = 0;
            while (in == v || in == corner) ++in;
            for (std::size_t k = 0; k < 4 * e.degree() + 4; ++k) {
                int out = 0;
                while (out == v || out == corner || out == in) ++out;
                path.push_back({tet, v, in, out});
                const auto& g = T.gluing(tet, out);
                corner = g.perm[corner];
                const auto next = cross_side(T, tet, v, out);
                tet = next.tet;
                v = next.vertex;
                in = next.in;
                if (tet == path.front().tet && v == path.front().vertex && in == path.front().in) break;
            }
            const auto c = validate_curve(T, "loop", path);
            const IntVector row = S.B.row(j);
            IntVector neg = row;
            for (auto& x : neg) x = -x;
            CHECK((c.nu == row || c.nu == neg));
        }
    }
}
