#include "tropodegen/geometry.hpp"

#include "tropodegen/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tropodegen {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI(0.0, 2 * kPi);

struct Equation {
    std::vector<int> exps;  // length 3n
    int sign = 1;
};

std::vector<Equation> collect_equations(const GluingSystem& S, const std::vector<PeripheralCurve>& curves) {
    std::vector<Equation> eqs;
    auto add = [&](const IntVector& row, int sign) {
        if (row.size() != 3 * S.tet_count) throw DimensionError("exponent vector does not match tetrahedron count");
        Equation e;
        e.sign = sign;
        for (const auto& x : row) e.exps.push_back(x.convert_to<int>());
        eqs.push_back(std::move(e));
    };
    for (std::size_t j = 0; j < S.A.rows(); ++j) add(S.A.row(j), 1);
    for (const auto& c : curves) add(c.mu, c.sign);
    return eqs;
}

bool bad_shape(Complex z) {
    return !std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) < 1e-300 ||
           std::abs(z - 1.0) < 1e-300;
}

// Log residual with the branch nearest zero, and its Jacobian in the free z's.
struct Linearization {
    Eigen::VectorXcd r;
    Eigen::MatrixXcd J;
};

Linearization linearize(const std::vector<Equation>& eqs, const std::vector<Complex>& z,
                        const std::vector<int>& free_vars) {
    const std::size_t n = z.size();
    std::vector<std::array<Complex, 3>> logs(n), dlogs(n);
    for (std::size_t t = 0; t < n; ++t) {
        const Complex w = z[t];
        logs[t] = {std::log(w), -std::log(1.0 - w), std::log((w - 1.0) / w)};
        dlogs[t] = {1.0 / w, 1.0 / (1.0 - w), 1.0 / (w * (w - 1.0))};
    }
    Linearization lin;
    lin.r.resize(static_cast<Eigen::Index>(eqs.size()));
    lin.J = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(free_vars.size()));
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        Complex f = eqs[e].sign < 0 ? Complex(0, kPi) : Complex(0);
        for (std::size_t k = 0; k < eqs[e].exps.size(); ++k)
            if (eqs[e].exps[k] != 0) f += double(eqs[e].exps[k]) * logs[k / 3][k % 3];
        f -= kTwoPiI * std::round(f.imag() / (2 * kPi));
        lin.r(static_cast<Eigen::Index>(e)) = f;
        for (std::size_t v = 0; v < free_vars.size(); ++v) {
            const auto t = static_cast<std::size_t>(free_vars[v]);
            Complex d = 0;
            for (int l = 0; l < 3; ++l) d += double(eqs[e].exps[3 * t + l]) * dlogs[t][l];
            lin.J(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(v)) = d;
        }
    }
    return lin;
}

double multiplicative_residual(const std::vector<Equation>& eqs, const ShapeAssignment& Z) {
    double worst = 0;
    for (const auto& e : eqs) {
        IntVector row(e.exps.begin(), e.exps.end());
        worst = std::max(worst, std::abs(evaluate_monomial(row, Z, e.sign) - 1.0));
    }
    return worst;
}

struct Attempt {
    bool converged = false;
    std::vector<Complex> z;
    int iterations = 0;
    double residual = 0;
};

Attempt newton(const std::vector<Equation>& eqs, std::vector<Complex> z, const std::vector<int>& free_vars,
               const SolveOptions& opts, bool first) {
    Attempt out;
    for (int it = 0; it <= opts.max_iterations; ++it) {
        const auto Z = ShapeAssignment::from_z(z);
        out.residual = multiplicative_residual(eqs, Z);
        out.iterations = it;
        if (out.residual < opts.tolerance) {
            out.converged = true;
            out.z = z;
            return out;
        }
        if (it == opts.max_iterations || free_vars.empty()) break;
        const auto lin = linearize(eqs, z, free_vars);
        if (!lin.J.allFinite()) break;
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(lin.J);
        if (cod.rank() == 0) {
            if (first && it == 0) throw SingularJacobian("Jacobian vanishes at the starting point");
            break;
        }
        const Eigen::VectorXcd step = cod.solve(-lin.r);
        const double merit = lin.r.squaredNorm();
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30 && !accepted; ++k, lambda *= 0.5) {
            std::vector<Complex> trial = z;
            bool ok = true;
            for (std::size_t v = 0; v < free_vars.size(); ++v) {
                auto& w = trial[static_cast<std::size_t>(free_vars[v])];
                w += lambda * step(static_cast<Eigen::Index>(v));
                if (bad_shape(w)) ok = false;
            }
            if (!ok) continue;
            const double m = linearize(eqs, trial, {}).r.squaredNorm();
            if (std::isfinite(m) && (m < merit || merit < 1e-28)) {
                z = std::move(trial);
                accepted = true;
            }
        }
        if (!accepted) break;
    }
    out.z = z;
    return out;
}

}  // namespace

double max_residual(const GluingSystem& S, const ShapeAssignment& Z, const std::vector<PeripheralCurve>& curves) {
    if (Z.size() != S.tet_count) throw DimensionError("shape assignment does not match triangulation");
    return multiplicative_residual(collect_equations(S, curves), Z);
}

SolveResult solve(const GluingSystem& S, const std::vector<PeripheralCurve>& curves, const SolveOptions& opts) {
    if (!(opts.tolerance > 0)) throw DomainError("tolerance must be positive");
    const std::size_t n = S.tet_count;
    std::vector<Complex> start = opts.initial;
    if (start.empty()) start.assign(n, Complex(0, 1));
    if (start.size() != n) throw DimensionError("initial guess has the wrong number of shapes");
    ShapeAssignment::from_z(start);  // rejects 0 and 1

    if (opts.complete && curves.empty()) throw MissingBasisError("completeness requested without peripheral curves");
    const auto eqs = collect_equations(S, opts.complete ? curves : std::vector<PeripheralCurve>{});

    std::vector<bool> held(n, false);
    for (int t : opts.fixed) {
        if (t < 0 || static_cast<std::size_t>(t) >= n) throw DimensionError("fixed tetrahedron out of range");
        held[static_cast<std::size_t>(t)] = true;
    }
    std::vector<int> free_vars;
    for (std::size_t t = 0; t < n; ++t)
        if (!held[t]) free_vars.push_back(static_cast<int>(t));

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 0.25);
    SolveResult result;
    double best = 0;
    for (int attempt = 0; attempt <= opts.retries; ++attempt) {
        std::vector<Complex> z0 = start;
        if (attempt > 0)
            for (int t : free_vars) {
                auto& w = z0[static_cast<std::size_t>(t)];
                w += Complex(gauss(rng), gauss(rng));
                if (bad_shape(w)) w += 0.1;
            }
        const Attempt a = newton(eqs, z0, free_vars, opts, attempt == 0);
        result.iterations += a.iterations;
        if (a.converged) {
            result.shapes = ShapeAssignment::from_z(a.z);
            result.attempts = attempt + 1;
            result.residual = a.residual;
            return result;
        }
        best = attempt == 0 ? a.residual : std::min(best, a.residual);
    }
    throw NoConvergence("Newton iteration did not converge after " + std::to_string(opts.retries + 1) +
                        " attempts (best residual " + std::to_string(best) + ")");
}

Complex holonomy_eval(const ShapeAssignment& Z, const PeripheralCurve& gamma) {
    if (gamma.mu.empty()) return 1.0;
    return evaluate_monomial(gamma.mu, Z, gamma.sign);
}

Complex trace_squared(const ShapeAssignment& Z, const PeripheralCurve& gamma) {
    const Complex mu = holonomy_eval(Z, gamma);
    if (mu == Complex(0)) throw DomainError("zero holonomy");
    return mu + 2.0 + 1.0 / mu;
}

double lobachevsky(double theta) {
    // L(theta) = Cl2(2 theta) / 2 with the Bernoulli expansion of Cl2 on [-pi, pi].
    double x = std::remainder(2 * theta, 2 * kPi);
    if (x == 0) return 0;
    const double ax = std::abs(x);
    double cl = ax - ax * std::log(ax);
    double power = ax;
    for (unsigned k = 1; k < 60; ++k) {
        power *= ax * ax;
        const double b = std::abs(boost::math::bernoulli_b2n<double>(static_cast<int>(k)));
        const double term = b * power / (2.0 * k * boost::math::factorial<double>(2 * k + 1));
        cl += term;
        if (term < 1e-18 * cl) break;
    }
    return 0.5 * (x < 0 ? -cl : cl);
}

double volume(const ShapeAssignment& Z) {
    double v = 0;
    for (const auto& t : Z.triples())
        for (const auto& s : t) {
            if (s == Complex(0)) throw DomainError("zero shape coordinate");
            v += lobachevsky(std::arg(s));
        }
    return v;
}

}  // namespace tropodegen
