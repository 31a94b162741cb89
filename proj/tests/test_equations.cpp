#include "tropodegen/equations.hpp"
#include "tropodegen/errors.hpp"
#include "tropodegen/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tropodegen;

TEST_CASE("fig8 gluing system") {
    const auto S = build_gluing_system(fig8_triangulation());
    CHECK(S.A == IntMatrix{{0, 2, 1, 0, 2, 1}, {2, 0, 1, 2, 0, 1}});
    CHECK(S.B == IntMatrix{{-1, -1, 2, -1, -1, 2}, {1, 1, -2, 1, 1, -2}});
    CHECK(S.A * S.Cn == S.B);
}

TEST_CASE("skew block") {
    CHECK(skew_block() == IntMatrix{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
    const auto c2 = skew_block_diagonal(2);
    CHECK(c2(0, 3) == 0);
    CHECK(c2(3, 4) == 1);
    CHECK(c2(5, 3) == 1);
}

TEST_CASE("parameter residuals") {
    const Complex w0(0.5, std::sqrt(3.0) / 2);
    const auto Z = ShapeAssignment::from_z({w0, w0});
    for (const auto& r : parameter_residuals(Z)) CHECK(std::abs(r) < 1e-12);
    for (const auto& t : Z.triples()) CHECK(std::abs(t[0] * t[1] * t[2] + 1.0) < 1e-12);

    const ShapeAssignment bad({{Complex(2), Complex(2), Complex(2)}});
    bool nonzero = false;
    for (const auto& r : parameter_residuals(bad)) nonzero = nonzero || std::abs(r) > 0.1;
    CHECK(nonzero);

    CHECK_THROWS_AS(ShapeAssignment::from_z({Complex(1)}), DomainError);
    CHECK_THROWS_AS(ShapeAssignment::from_z({Complex(0)}), DomainError);
    CHECK_THROWS_AS(parameter_residuals(ShapeAssignment({{Complex(0), Complex(1), Complex(1)}})), DomainError);
}

TEST_CASE("gluing residuals") {
    const auto S = build_gluing_system(fig8_triangulation());
    const Complex w0(0.5, std::sqrt(3.0) / 2);
    for (const auto& r : gluing_residuals(S, ShapeAssignment::from_z({w0, w0}))) CHECK(std::abs(r) < 1e-12);

    const std::array<Complex, 3> t{Complex(2), Complex(-1), Complex(0.5)};
    const auto g = gluing_residuals(S, ShapeAssignment({t, t}));
    CHECK(std::abs(g[0] - Complex(-0.75)) < 1e-15);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int k = 0; k < 50; ++k) {
        const Complex w(U(rng), U(rng));
        if (std::abs(w) < 0.1 || std::abs(1.0 - w) < 0.1) continue;
        for (double sign : {1.0, -1.0}) {
            const Complex z = 0.5 * (1.0 + sign * std::sqrt(1.0 + 4.0 / (w * (w - 1.0))));
            const auto Z = ShapeAssignment::from_z({w, z});
            for (const auto& r : gluing_residuals(S, Z)) CHECK(std::abs(r) < 1e-10);
            for (std::size_t j = 0; j < S.A.rows(); ++j)
                CHECK(std::abs(evaluate_monomial(S.A.row(j), Z) - 1.0 - gluing_residuals(S, Z)[j]) < 1e-14);
        }
    }
    CHECK_THROWS_AS(gluing_residuals(S, ShapeAssignment::from_z({w0})), DimensionError);
}

TEST_CASE("equation printers") {
    const auto T = fig8_triangulation();
    const auto S = build_gluing_system(T);
    CHECK(format_gluing_equation(S.A.row(0), T.shape_names) == "1 = (w′)²w″(z′)²z″");
    CHECK(format_gluing_equation(S.A.row(1), T.shape_names) == "1 = w²w″z²z″");
    CHECK(format_matching_equation(S.B.row(1), T.quad_names) == "0 = p + p′ - 2 p″ + q + q′ - 2 q″");
    CHECK(format_matching_equation(IntVector{0, -1, 0}, {"p"}) == "0 = -p′");
    CHECK(matrix_to_csv(S.A) == "0,2,1,0,2,1\n2,0,1,2,0,1\n");
}
