#include "tropodegen/equations.hpp"
#include "tropodegen/errors.hpp"
#include "tropodegen/fixtures.hpp"
#include "tropodegen/geometry.hpp"
#include "tropodegen/mobius.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tropodegen;

namespace {

const Complex w0(0.5, std::sqrt(3.0) / 2);
CP1Point fin(Complex z) { return CP1Point::finite(z); }
const CP1Point inf = CP1Point::infinity();

ShapeAssignment fig8_point(Complex w, double sign = 1) {
    return ShapeAssignment::from_z({w, 0.5 * (1.0 + sign * std::sqrt(1.0 + 4.0 / (w * (w - 1.0))))});
}

}  // namespace

TEST_CASE("identity triple") {
    const auto m = mobius_from_triples({fin(0), fin(1), inf}, {fin(0), fin(1), inf});
    CHECK(std::abs(m.determinant() - 1.0) < 1e-14);
    CHECK(std::abs(m(0, 1)) < 1e-14);
    CHECK(std::abs(m(1, 0)) < 1e-14);
    CHECK(std::abs(m(0, 0) - m(1, 1)) < 1e-14);
    CHECK(std::abs(trace_squared(m) - 4.0) < 1e-14);
}

TEST_CASE("degenerate triples") {
    CHECK_THROWS_AS(mobius_from_triples({fin(0), fin(0), inf}, {fin(0), fin(1), inf}), DegenerateTripleError);
    CHECK_THROWS_AS(mobius_from_triples({fin(0), fin(1), inf}, {inf, fin(1), inf}), DegenerateTripleError);
}

TEST_CASE("maps triples and preserves cross ratios") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> U(-3, 3);
    auto rnd = [&] { return fin(Complex(U(rng), U(rng))); };
    for (int k = 0; k < 200; ++k) {
        std::array<CP1Point, 3> src{rnd(), rnd(), k % 3 == 0 ? inf : rnd()};
        std::array<CP1Point, 3> dst{k % 4 == 0 ? inf : rnd(), rnd(), rnd()};
        const auto f = mobius_from_triples(src, dst);
        CHECK(std::abs(f.determinant() - 1.0) < 1e-10);
        for (int i = 0; i < 3; ++i) CHECK(chordal_distance(tropodegen::apply(f, src[i]), dst[i]) < 1e-10);
        const auto a = rnd(), b = rnd(), c = rnd(), d = rnd();
        const Complex before = cross_ratio(a, b, c, d);
        const Complex after = cross_ratio(tropodegen::apply(f, a), tropodegen::apply(f, b), tropodegen::apply(f, c), tropodegen::apply(f, d));
        CHECK(std::abs(after - before) < 1e-8 * (1 + std::abs(before)));
    }
}

TEST_CASE("cross ratio with a point at infinity") {
    // (inf, 0; 1, z) = (0 - z) / (0 - 1) = z
    const Complex z(0.3, 0.8);
    CHECK(std::abs(cross_ratio(inf, fin(0), fin(1), fin(z)) - z) < 1e-15);
    CHECK(std::abs(cross_ratio(fin(2), fin(3), fin(5), fin(7)) - Complex(-3.0 * -4.0 / (-5.0 * -2.0))) < 1e-15);
}

TEST_CASE("explicit face pairings of the fig8 fundamental domain") {
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    const auto T = fig8_triangulation();
    for (int k = 0; k < 30; ++k) {
        const Complex w(U(rng), U(rng));
        if (std::abs(w) < 0.2 || std::abs(1.0 - w) < 0.2) continue;
        const auto Z = fig8_point(w);
        const Complex z = Z[1][0];
        // M_Z : [inf, 0, zw] -> [1, 0, z] and A_Z : [0, z, zw] -> [inf, 1, z]
        const auto M = mobius_from_triples({inf, fin(0), fin(z * w)}, {fin(1), fin(0), fin(z)});
        const auto A = mobius_from_triples({fin(0), fin(z), fin(z * w)}, {inf, fin(1), fin(z)});
        CHECK(std::abs(trace_squared(M) - trace_squared(Z, T.curve("meridian"))) < 1e-9);
        CHECK(std::abs(trace_squared(A) - (1.0 - w * z) * (1.0 - w * z)) < 1e-9);
    }
}

TEST_CASE("development at the complete structure") {
    const auto T = fig8_triangulation();
    const auto Z = ShapeAssignment::from_z({w0, w0});
    const auto dev = develop(T, Z);
    REQUIRE(dev.tetrahedra.size() == 2);
    for (const auto& d : dev.tetrahedra) {
        CHECK(std::abs(d.cross_ratio - w0) < 1e-10);
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                const Complex expected = Z[static_cast<std::size_t>(d.tet)][static_cast<std::size_t>(T.edge_label(d.tet, a, b))];
                CHECK(std::abs(edge_cross_ratio(T, d.tet, d.vertices, a, b) - expected) < 1e-10);
            }
    }
    CHECK(dev.tetrahedra[0].parent == -1);
    CHECK(dev.tetrahedra[1].parent == 0);
    CHECK(dev.pairings.size() == 3);  // 4 face pairings, one used by the tree
    for (const auto& p : dev.pairings) CHECK(std::abs(p.matrix.determinant() - 1.0) < 1e-10);
    bool any_peripheral = false;
    for (const auto& p : dev.pairings)
        if (p.peripheral) {
            any_peripheral = true;
            CHECK(std::abs(trace_squared(p.matrix) - 4.0) < 1e-9);
        }
    CHECK(any_peripheral);
    REQUIRE(dev.curves.size() == 2);
    for (const auto& h : dev.curves) CHECK(std::abs(h.trace_squared - 4.0) < 1e-10);
}

TEST_CASE("developed curve holonomy matches the monomial holonomy") {
    const auto T = fig8_triangulation();
    std::mt19937 rng(16);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    int checked = 0;
    while (checked < 40) {
        const Complex w(U(rng), U(rng));
        if (std::abs(w) < 0.2 || std::abs(1.0 - w) < 0.2) continue;
        const auto Z = fig8_point(w, checked % 2 ? 1.0 : -1.0);
        const auto dev = develop(T, Z);
        for (const auto& h : dev.curves) {
            const Complex expected = trace_squared(Z, T.curve(h.name));
            CHECK(std::abs(h.trace_squared - expected) < 1e-8 * (1 + std::abs(expected)));
            CHECK(std::abs(h.matrix.determinant() - 1.0) < 1e-10);
        }
        for (const auto& d : dev.tetrahedra)
            CHECK(std::abs(d.cross_ratio - Z[static_cast<std::size_t>(d.tet)][0]) < 1e-8);
        ++checked;
    }
}

TEST_CASE("development rejects off-variety shapes") {
    const auto T = fig8_triangulation();
    CHECK_THROWS_AS(develop(T, ShapeAssignment::from_z({w0 + 0.1, w0})), ConsistencyError);
    CHECK_THROWS_AS(develop(T, ShapeAssignment::from_z({w0})), DimensionError);
}
