#include "tropodegen/degeneration.hpp"

#include "tropodegen/errors.hpp"

#include <cmath>
#include <numbers>

namespace tropodegen {

std::vector<double> normalized_log(const ShapeAssignment& Z, double* u) {
    std::vector<double> logs;
    double sum = 1;
    for (const auto& t : Z.triples())
        for (const auto& s : t) {
            if (s == Complex(0)) throw DomainError("zero shape coordinate");
            const double l = std::log(std::abs(s));
            logs.push_back(l);
            sum += l * l;
        }
    const double scale = 1 / std::sqrt(sum);
    for (auto& l : logs) l *= scale;
    if (u) *u = scale;
    return logs;
}

DegenerationReport track_degeneration(const GluingSystem& S, const std::vector<PathPoint>& path,
                                      const std::vector<TropicalPoint>& candidates,
                                      const DegenerationOptions& opts) {
    DegenerationReport report;
    for (const auto& c : candidates)
        if (c.unit.size() != 3 * S.tet_count) throw DimensionError("candidate has the wrong length");
    for (const auto& p : path) {
        if (p.shapes.size() != S.tet_count) throw DimensionError("path point has the wrong number of shapes");
        for (const auto& r : gluing_residuals(S, p.shapes))
            if (!(std::abs(r) <= opts.tolerance))
                throw DomainError("path point at r = " + std::to_string(p.r) + " is off the deformation variety");
        DegenerationSample s;
        s.r = p.r;
        s.shapes = p.shapes;
        s.normalized_log = normalized_log(p.shapes, &s.u);
        for (const auto& c : candidates) {
            double d2 = 0;
            for (std::size_t k = 0; k < c.unit.size(); ++k) {
                const double diff = s.normalized_log[k] - c.unit[k];
                d2 += diff * diff;
            }
            s.distances.push_back(std::sqrt(d2));
        }
        report.samples.push_back(std::move(s));
    }

    const auto& samples = report.samples;
    if (opts.window == 0 || samples.size() < opts.window) return report;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!(samples.back().distances[c] < opts.threshold)) continue;
        bool decreasing = true;
        for (std::size_t i = samples.size() - opts.window + 1; i < samples.size(); ++i)
            if (!(samples[i].distances[c] < samples[i - 1].distances[c])) decreasing = false;
        if (decreasing && (!report.verdict || samples.back().distances[c] < samples.back().distances[*report.verdict]))
            report.verdict = c;
    }
    return report;
}

std::vector<PathPoint> fig8_builtin_path(std::size_t samples) {
    const Complex w0 = std::polar(1.0, std::numbers::pi / 3);
    std::vector<PathPoint> path;
    for (std::size_t k = 1; k <= samples; ++k) {
        const double r = std::ldexp(1.0, -static_cast<int>(k));
        const Complex w = r * r * w0;
        const Complex z = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 / (w * (w - 1.0))));
        path.push_back({r, ShapeAssignment::from_z({w, z})});
    }
    return path;
}

}  // namespace tropodegen
