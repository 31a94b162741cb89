#include "oracles.hpp"

#include "tropodegen/equations.hpp"
#include "tropodegen/errors.hpp"
#include "tropodegen/fixtures.hpp"
#include "tropodegen/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace tropodegen;

namespace {

const Complex w0(0.5, std::sqrt(3.0) / 2);

ShapeAssignment random_fig8_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (;;) {
        const Complex w(U(rng), U(rng));
        if (std::abs(w) < 0.2 || std::abs(1.0 - w) < 0.2) continue;
        const double sign = rng() % 2 ? 1.0 : -1.0;
        const Complex z = 0.5 * (1.0 + sign * std::sqrt(1.0 + 4.0 / (w * (w - 1.0))));
        if (std::abs(z) < 0.2 || std::abs(1.0 - z) < 0.2) continue;
        return ShapeAssignment::from_z({w, z});
    }
}

}  // namespace

TEST_CASE("complete structure of fig8") {
    const auto T = fig8_triangulation();
    const auto S = build_gluing_system(T);
    SolveOptions opts;
    opts.complete = true;
    opts.initial = {Complex(0, 1), Complex(0, 1)};
    const auto res = solve(S, T.curves(), opts);
    for (const auto& z : res.shapes.z()) CHECK(std::abs(z - w0) < 1e-10);
    CHECK(res.residual < 1e-12);
    CHECK(max_residual(S, res.shapes, T.curves()) < 1e-10);
    for (const auto& r : parameter_residuals(res.shapes)) CHECK(std::abs(r) < 1e-14);
    CHECK(res.iterations <= opts.max_iterations);
}

TEST_CASE("incomplete solve with a fixed shape") {
    const auto T = fig8_triangulation();
    const auto S = build_gluing_system(T);
    SolveOptions opts;
    const Complex w(0.3, 0.9);
    opts.initial = {w, Complex(0.5, 0.5)};
    opts.fixed = {0};
    const auto res = solve(S, {}, opts);
    CHECK(res.shapes[0][0] == w);
    const Complex z = res.shapes[1][0];
    CHECK(std::abs(z * (1.0 - z) * w * (1.0 - w) - 1.0) < 1e-12);
    for (const auto& r : gluing_residuals(S, res.shapes)) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("solver failures") {
    const auto T = fig8_triangulation();
    const auto S = build_gluing_system(T);
    SolveOptions opts;
    opts.initial = {Complex(1), Complex(0, 1)};
    CHECK_THROWS_AS(solve(S, T.curves(), opts), DomainError);

    opts.initial = {Complex(0, 1), Complex(0, 1)};
    opts.complete = true;
    CHECK_THROWS_AS(solve(S, {}, opts), MissingBasisError);

    opts.max_iterations = 0;
    opts.retries = 0;
    CHECK_THROWS_AS(solve(S, T.curves(), opts), NoConvergence);

    // Equations with no shape dependence, one of them with the wrong sign.
    PeripheralCurve constant;
    constant.name = "constant";
    constant.mu = IntVector(6, Integer(0));
    constant.sign = -1;
    GluingSystem flat = S;
    flat.A = IntMatrix(1, 6);
    SolveOptions singular;
    singular.complete = true;
    CHECK_THROWS_AS(solve(flat, {constant}, singular), SingularJacobian);

    SolveOptions wrong;
    wrong.initial = {Complex(0, 1)};
    CHECK_THROWS_AS(solve(S, {}, wrong), DimensionError);
}

TEST_CASE("perturbed restarts are deterministic") {
    const auto T = fig8_triangulation();
    const auto S = build_gluing_system(T);
    SolveOptions opts;
    opts.complete = true;
    opts.initial = {Complex(0.3, 0.5), Complex(1.5, 0.4)};
    opts.max_iterations = 6;  // too few for the first attempt, so restarts are used
    const auto a = solve(S, T.curves(), opts);
    const auto b = solve(S, T.curves(), opts);
    CHECK(a.shapes.z() == b.shapes.z());
    CHECK(a.attempts == b.attempts);
    CHECK(a.attempts > 1);
    CHECK(max_residual(S, a.shapes, T.curves()) < 1e-10);
}

TEST_CASE("holonomy at the complete structure") {
    const auto T = fig8_triangulation();
    const auto Z = ShapeAssignment::from_z({w0, w0});
    CHECK(std::abs(holonomy_eval(Z, T.curve("meridian")) - 1.0) < 1e-12);
    CHECK(std::abs(holonomy_eval(Z, T.curve("longitude")) - 1.0) < 1e-12);
    CHECK(std::abs(trace_squared(Z, T.curve("meridian")) - 4.0) < 1e-12);
    PeripheralCurve trivial;
    CHECK(holonomy_eval(Z, trivial) == Complex(1));
    CHECK_THROWS_AS(holonomy_eval(ShapeAssignment({{Complex(0), Complex(1), Complex(1)},
                                                   {Complex(0), Complex(1), Complex(1)}}),
                                  T.curve("meridian")),
                    DomainError);
}

TEST_CASE("holonomy identities on the deformation variety") {
    const auto T = fig8_triangulation();
    const auto& M = T.curve("meridian");
    const auto& L = T.curve("longitude");
    std::mt19937 rng(31);
    for (int k = 0; k < 50; ++k) {
        const auto Z = random_fig8_point(rng);
        const Complex w = Z[0][0], z = Z[1][0];
        const Complex m = holonomy_eval(Z, M), l = holonomy_eval(Z, L);
        CHECK(std::abs(m - w * (1.0 - z)) < 1e-10 * std::abs(m));
        CHECK(std::abs(l - z * z * (z - 1.0) * (z - 1.0)) < 1e-10 * std::abs(l));
        CHECK(std::abs(1.0 / m - z * (1.0 - w)) < 1e-10 * std::abs(1.0 / m));
        const Complex X = w + 2.0 * (1.0 - w * z) + z;
        CHECK(std::abs(trace_squared(Z, M) - X) < 1e-10 * (1 + std::abs(X)));
        const Complex y = 1.0 - w * z;
        CHECK(std::abs(1.0 - y - y * y + (y - 1.0) * X) < 1e-8);
        const Complex P = std::pow(m, 4) - 2.0 * std::pow(m, 3) - 3.0 * m * m + 2.0 * m - l + 6.0 - 1.0 / l +
                          2.0 / m - 3.0 / (m * m) - 2.0 / std::pow(m, 3) + 1.0 / std::pow(m, 4);
        CHECK(std::abs(P) < 1e-8);
        // Homomorphism: the curve traversed twice has the squared holonomy.
        auto twice = M.path;
        twice.insert(twice.end(), M.path.begin(), M.path.end());
        const auto MM = validate_curve(T, "MM", twice);
        CHECK(std::abs(holonomy_eval(Z, MM) - m * m) < 1e-10 * std::abs(m * m));
    }
}

TEST_CASE("Lobachevsky function against quadrature and Fourier oracles") {
    const double pi = std::numbers::pi;
    for (double t : {0.1, 0.3, pi / 6, 0.7, pi / 3, 1.2, pi / 2, 2.0, 2.5, 3.0, -0.4, 4.0, 7.5}) {
        CHECK(lobachevsky(t) == doctest::Approx(oracle::lobachevsky_quadrature(t)).epsilon(1e-12).scale(1));
    }
    CHECK(std::abs(lobachevsky(pi / 3) - oracle::lobachevsky_fourier(pi / 3)) < 1e-10);
    CHECK(std::abs(lobachevsky(0.9) - oracle::lobachevsky_fourier(0.9)) < 1e-10);
    CHECK(lobachevsky(0) == 0);
    CHECK(std::abs(lobachevsky(pi)) < 1e-15);
    CHECK(std::abs(lobachevsky(pi / 2)) < 1e-15);
}

TEST_CASE("volumes") {
    const double pi = std::numbers::pi;
    const double regular = 3 * oracle::lobachevsky_quadrature(pi / 3);
    CHECK(regular == doctest::Approx(1.0149416064096536).epsilon(1e-13));
    const auto reg = ShapeAssignment::from_z({w0});
    CHECK(volume(reg) == doctest::Approx(regular).epsilon(1e-12));
    CHECK(volume(ShapeAssignment::from_z({w0, w0})) == doctest::Approx(2 * regular).epsilon(1e-12));
    CHECK(std::abs(volume(ShapeAssignment::from_z({Complex(2.5)}))) < 1e-15);
    CHECK(std::abs(volume(ShapeAssignment::from_z({Complex(-0.5)}))) < 1e-15);

    std::mt19937 rng(4);
    std::uniform_real_distribution<double> U(-3, 3), P(0.05, 3);
    for (int k = 0; k < 50; ++k) {
        const Complex z(U(rng), P(rng));
        const auto Z = ShapeAssignment::from_z({z});
        CHECK(volume(Z) > 0);
        CHECK(volume(ShapeAssignment::from_z({std::conj(z)})) == doctest::Approx(-volume(Z)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(volume(ShapeAssignment({{Complex(0), Complex(1), Complex(1)}})), DomainError);
}
