#include "tropodegen/degeneration.hpp"
#include "tropodegen/equations.hpp"
#include "tropodegen/errors.hpp"
#include "tropodegen/fixtures.hpp"
#include "tropodegen/geometry.hpp"
#include "tropodegen/surfaces.hpp"
#include "tropodegen/triangulation.hpp"
#include "tropodegen/tropical.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tropodegen;

namespace {

py::object to_py(const Integer& x) { return py::module_::import("builtins").attr("int")(x.str()); }

py::object to_py(const Rational& q) {
    return py::module_::import("fractions").attr("Fraction")(to_py(numerator(q)), to_py(denominator(q)));
}

template <class T>
py::list to_py(const std::vector<T>& v) {
    py::list out;
    for (const auto& x : v) out.append(to_py(x));
    return out;
}

py::list to_py(const IntMatrix& m) {
    py::list out;
    for (std::size_t r = 0; r < m.rows(); ++r) out.append(to_py(m.row(r)));
    return out;
}

RationalVector rationals(const py::sequence& s) {
    RationalVector v;
    for (auto item : s) {
        const auto frac = py::module_::import("fractions").attr("Fraction")(item);
        v.emplace_back(Integer(py::str(frac.attr("numerator")).cast<std::string>()),
                       Integer(py::str(frac.attr("denominator")).cast<std::string>()));
    }
    return v;
}

std::vector<TropicalPoint> candidates(const GluingSystem& S, std::vector<IntVector>& vertices) {
    vertices = enumerate_pf_vertices(S);
    std::vector<TropicalPoint> c;
    for (const auto& v : vertices) c.push_back(quads_to_xi(to_rational(v)));
    return c;
}

py::dict report(const DegenerationReport& rep, const std::vector<IntVector>& vertices) {
    py::dict d;
    py::list samples;
    for (const auto& s : rep.samples) {
        py::dict row;
        row["r"] = s.r;
        row["z"] = s.shapes.z();
        row["normalized_log"] = s.normalized_log;
        row["distances"] = s.distances;
        samples.append(row);
    }
    d["samples"] = samples;
    d["verdict"] = rep.verdict ? py::object(to_py(vertices[*rep.verdict])) : py::object(py::none());
    return d;
}

}  // namespace

PYBIND11_MODULE(_tropodegen, m) {
    m.doc() = "Gluing equations, ideal points and degenerations of ideal triangulations";

    // Input errors derive from ValueError, numeric failures from ArithmeticError.
    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<std::pair<py::object, py::object>> errors;
    errors.call_once_and_store_result([&] {
        auto input = py::exception<Error>(m, "InputError", PyExc_ValueError);
        auto numeric = py::exception<Error>(m, "NumericError", PyExc_ArithmeticError);
        return std::make_pair(py::object(input), py::object(numeric));
    });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto& [input, numeric] = errors.get_stored();
            py::set_error(e.kind() == ErrorKind::Input ? input : numeric, e.what());
        }
    });

    py::class_<IdealTriangulation>(m, "Triangulation")
        .def_property_readonly("size", &IdealTriangulation::size)
        .def_property_readonly("cusp_count", &IdealTriangulation::cusp_count)
        .def_readonly("name", &IdealTriangulation::name)
        .def_property_readonly("curves", [](const IdealTriangulation& T) {
            std::vector<std::string> names;
            for (const auto& c : T.curves()) names.push_back(c.name);
            return names;
        })
        .def("mu", [](const IdealTriangulation& T, const std::string& c) { return to_py(T.curve(c).mu); })
        .def("nu", [](const IdealTriangulation& T, const std::string& c) { return to_py(T.curve(c).nu); });

    m.def("parse", &parse_triangulation, py::arg("text"));
    m.def("load", &load_triangulation, py::arg("path"));
    m.def("fig8", &fig8_triangulation);

    m.def("gluing_matrices", [](const IdealTriangulation& T) {
        const auto S = build_gluing_system(T);
        py::dict d;
        d["A"] = to_py(S.A);
        d["B"] = to_py(S.B);
        return d;
    });

    m.def(
        "pf_vertices",
        [](const IdealTriangulation& T, unsigned jobs) {
            const auto S = build_gluing_system(T);
            std::vector<IntVector> v;
            {
                py::gil_scoped_release release;
                v = enumerate_pf_vertices(S, jobs);
            }
            py::list out;
            for (const auto& x : v) out.append(to_py(x));
            return out;
        },
        py::arg("tri"), py::arg("jobs") = 1);

    m.def("quads_to_xi", [](const py::sequence& N) { return to_py(quads_to_xi(rationals(N)).xi); });
    m.def("xi_to_quads", [](const py::sequence& xi) { return to_py(xi_to_quads(rationals(xi))); });

    m.def("boundary_slopes", [](const IdealTriangulation& T, const py::sequence& N) {
        const auto rep = boundary_slopes(build_gluing_system(T), rationals(N), T);
        py::list cusps;
        for (const auto& c : rep.cusps) {
            py::dict d;
            d["cusp"] = c.cusp;
            d["nu_meridian"] = to_py(c.nu_meridian);
            d["nu_longitude"] = to_py(c.nu_longitude);
            d["slope"] = c.slope ? to_py(*c.slope) : py::object(py::none());
            cusps.append(d);
        }
        return cusps;
    });

    m.def(
        "solve",
        [](const IdealTriangulation& T, bool complete, std::vector<Complex> start, double tolerance,
           int max_iterations, int retries, std::vector<int> fixed, std::uint64_t seed) {
            SolveOptions o;
            o.complete = complete;
            o.initial = std::move(start);
            o.tolerance = tolerance;
            o.max_iterations = max_iterations;
            o.retries = retries;
            o.fixed = std::move(fixed);
            o.seed = seed;
            const auto res = solve(build_gluing_system(T), T.curves(), o);
            py::dict d;
            d["z"] = res.shapes.z();
            d["iterations"] = res.iterations;
            d["attempts"] = res.attempts;
            d["residual"] = res.residual;
            return d;
        },
        py::arg("tri"), py::arg("complete") = false, py::arg("start") = std::vector<Complex>{},
        py::arg("tolerance") = SolveOptions{}.tolerance, py::arg("max_iterations") = SolveOptions{}.max_iterations,
        py::arg("retries") = SolveOptions{}.retries, py::arg("fixed") = std::vector<int>{},
        py::arg("seed") = SolveOptions{}.seed);

    m.def("volume", [](const std::vector<Complex>& z) { return volume(ShapeAssignment::from_z(z)); }, py::arg("z"));
    m.def("lobachevsky", &lobachevsky, py::arg("theta"));
    m.def(
        "holonomy",
        [](const IdealTriangulation& T, const std::vector<Complex>& z, const std::string& curve) {
            return holonomy_eval(ShapeAssignment::from_z(z), T.curve(curve));
        },
        py::arg("tri"), py::arg("z"), py::arg("curve"));

    m.def(
        "degenerate_fig8_builtin",
        [](std::size_t samples, double threshold, std::size_t window) {
            const auto S = build_gluing_system(fig8_triangulation());
            std::vector<IntVector> vertices;
            const auto c = candidates(S, vertices);
            DegenerationOptions o;
            o.threshold = threshold;
            o.window = window;
            return report(track_degeneration(S, fig8_builtin_path(samples), c, o), vertices);
        },
        py::arg("samples") = 20, py::arg("threshold") = DegenerationOptions{}.threshold,
        py::arg("window") = DegenerationOptions{}.window);
}
