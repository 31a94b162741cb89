#pragma once

// Tracking u(Z) log|Z| along a path of shape assignments toward candidate
// ideal points.

#include "tropodegen/equations.hpp"
#include "tropodegen/tropical.hpp"

#include <optional>
#include <vector>

namespace tropodegen {

struct PathPoint {
    double r = 0;
    ShapeAssignment shapes;
};

struct DegenerationSample {
    double r = 0;
    ShapeAssignment shapes;
    double u = 0;                         ///< 1 / sqrt(1 + sum log^2 |z|)
    std::vector<double> normalized_log;   ///< u(Z) log|Z|
    std::vector<double> distances;        ///< to each candidate's unit vector
};

struct DegenerationOptions {
    double threshold = 1e-3;
    /// The distance must decrease strictly over this many final samples.
    std::size_t window = 5;
    /// Largest gluing residual accepted for a path point.
    double tolerance = 1e-8;
};

struct DegenerationReport {
    std::vector<DegenerationSample> samples;
    std::optional<std::size_t> verdict;  ///< index into the candidates
};

/// u(Z) log|Z| for one assignment.
std::vector<double> normalized_log(const ShapeAssignment& Z, double* u = nullptr);

/// Throws DomainError for zero shapes or points off the deformation variety.
DegenerationReport track_degeneration(const GluingSystem& S, const std::vector<PathPoint>& path,
                                      const std::vector<TropicalPoint>& candidates,
                                      const DegenerationOptions& opts = {});

/// w = r^2 w0, z = (1 + sqrt(1 + 4/(w(w-1))))/2 with w0 = exp(i pi/3) and
/// r = 2^-1, ..., 2^-samples, in the shape order (w, z).
std::vector<PathPoint> fig8_builtin_path(std::size_t samples);

}  // namespace tropodegen
