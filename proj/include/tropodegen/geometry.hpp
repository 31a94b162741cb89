#pragma once

// Numeric side: Newton solving of the gluing (and completeness) equations,
// peripheral holonomies, trace squares and volumes.

#include "tropodegen/equations.hpp"
#include "tropodegen/triangulation.hpp"

#include <cstdint>
#include <vector>

namespace tropodegen {

struct SolveOptions {
    /// Starting z per tetrahedron; empty means i for every tetrahedron.
    std::vector<Complex> initial;
    /// Impose mu(gamma) = 1 for every supplied curve.
    bool complete = false;
    /// Bound on the multiplicative residual |prod - 1| of every equation.
    double tolerance = 1e-12;
    int max_iterations = 100;
    /// Additional attempts from perturbed starts after the first one fails.
    int retries = 8;
    /// Tetrahedra whose shape is held at its initial value.
    std::vector<int> fixed;
    std::uint64_t seed = 20240521;
};

struct SolveResult {
    ShapeAssignment shapes;
    int iterations = 0;
    int attempts = 0;
    double residual = 0;
};

/// Least-squares Newton iteration in logarithmic form, one unknown per
/// tetrahedron. Throws DomainError for a start at 0 or 1, SingularJacobian
/// when the Jacobian at the start vanishes, NoConvergence when every
/// attempt fails, MissingBasisError when completeness is requested without
/// curves, DimensionError on size mismatches.
SolveResult solve(const GluingSystem& S, const std::vector<PeripheralCurve>& curves, const SolveOptions& opts);

/// Largest |prod - 1| over the gluing equations and, if given, the curves.
double max_residual(const GluingSystem& S, const ShapeAssignment& Z,
                    const std::vector<PeripheralCurve>& curves = {});

/// mu_Z(gamma). Throws DomainError on a zero shape.
Complex holonomy_eval(const ShapeAssignment& Z, const PeripheralCurve& gamma);

/// mu + 2 + 1/mu.
Complex trace_squared(const ShapeAssignment& Z, const PeripheralCurve& gamma);

/// Lobachevsky function, L(theta) = -int_0^theta log|2 sin t| dt.
double lobachevsky(double theta);

/// Sum over tetrahedra of L(arg z) + L(arg z') + L(arg z'').
double volume(const ShapeAssignment& Z);

}  // namespace tropodegen
