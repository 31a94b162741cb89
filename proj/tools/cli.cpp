#include "cli.hpp"

#include "tropodegen/degeneration.hpp"
#include "tropodegen/equations.hpp"
#include "tropodegen/errors.hpp"
#include "tropodegen/fixtures.hpp"
#include "tropodegen/geometry.hpp"
#include "tropodegen/mobius.hpp"
#include "tropodegen/surfaces.hpp"
#include "tropodegen/triangulation.hpp"
#include "tropodegen/tropical.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace tropodegen {

namespace {

using json = nlohmann::ordered_json;

struct Common {
    std::string file;
    std::string format = "json";
};

struct NumericInput {
    std::vector<std::string> shapes;
    std::optional<double> tol;
};

json rational_json(const Rational& q) {
    if (denominator(q) == 1 && numerator(q) <= Integer(std::numeric_limits<long long>::max()) &&
        numerator(q) >= Integer(std::numeric_limits<long long>::min()))
        return numerator(q).convert_to<long long>();
    return to_string(q);
}

json vector_json(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_json(Rational(x)));
    return a;
}

json vector_json(const RationalVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

json matrix_json(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r)));
    return a;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json point_json(const CP1Point& p) {
    if (p.is_infinite()) return "inf";
    return complex_json(p.value());
}

json matrix2_json(const Mat2& m) {
    return json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                        json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

json shapes_json(const IdealTriangulation& tri, const ShapeAssignment& Z) {
    json a = json::array();
    for (std::size_t t = 0; t < Z.size(); ++t)
        a.push_back({{"tet", t},
                     {"name", tri.shape_names.at(t)},
                     {"z", complex_json(Z[t][0])},
                     {"z'", complex_json(Z[t][1])},
                     {"z''", complex_json(Z[t][2])}});
    return a;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

std::string fmt(Complex z) { return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i"; }

std::string vec_str(const IntVector& v) {
    std::vector<std::string> p;
    for (const auto& x : v) p.push_back(x.str());
    return "(" + join(p, ",") + ")";
}

void print_table(std::ostream& out, const std::vector<std::string>& head,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(head.size());
    auto cells = [](const std::string& s) {
        // Count code points so that primes and superscripts align.
        std::size_t n = 0;
        for (unsigned char c : s)
            if ((c & 0xC0) != 0x80) ++n;
        return n;
    };
    for (std::size_t c = 0; c < head.size(); ++c) {
        width[c] = cells(head[c]);
        for (const auto& r : rows) width[c] = std::max(width[c], cells(r[c]));
    }
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            out << (c ? " | " : "") << r[c];
            if (c + 1 < r.size()) out << std::string(width[c] - cells(r[c]), ' ');
        }
        out << '\n';
    };
    line(head);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 3 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const std::vector<std::string>& head,
               const std::vector<std::vector<std::string>>& rows) {
    out << join(head, ",") << '\n';
    for (const auto& r : rows) out << join(r, ",") << '\n';
}

IdealTriangulation load(const Common& c) {
    if (c.file.empty()) throw SchemaError("no triangulation file given");
    return load_triangulation(c.file);
}

double default_tolerance() {
    double tol = SolveOptions{}.tolerance;
    if (const char* env = std::getenv("TROPODEGEN_TOL"); env && *env) {
        char* end = nullptr;
        tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol > 0)) throw SchemaError("TROPODEGEN_TOL must be a positive number");
    }
    return tol;
}

Complex parse_complex(const std::string& s) {
    std::istringstream in(s);
    double re = 0, im = 0;
    char comma = 0;
    if (!(in >> re)) throw SchemaError("cannot parse shape '" + s + "' (expected re,im)");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw SchemaError("cannot parse shape '" + s + "' (expected re,im)");
    }
    if (in >> comma) throw SchemaError("cannot parse shape '" + s + "' (expected re,im)");
    return {re, im};
}

/// Shapes from --shape values, or the complete structure from a default solve.
ShapeAssignment resolve_shapes(const IdealTriangulation& tri, const NumericInput& in) {
    if (!in.shapes.empty()) {
        if (in.shapes.size() != tri.size()) throw DimensionError("expected one --shape per tetrahedron");
        std::vector<Complex> z;
        for (const auto& s : in.shapes) z.push_back(parse_complex(s));
        return ShapeAssignment::from_z(z);
    }
    SolveOptions opts;
    opts.complete = true;
    opts.tolerance = in.tol.value_or(default_tolerance());
    return solve(build_gluing_system(tri), tri.curves(), opts).shapes;
}

// ---------------------------------------------------------------------------

int cmd_equations(const Common& c, const std::string& out_dir, std::ostream& out) {
    const auto tri = load(c);
    const auto S = build_gluing_system(tri);
    if (c.format == "csv") {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const std::string a = matrix_to_csv(S.A), b = matrix_to_csv(S.B);
        std::ofstream(fs::path(out_dir) / "A.csv") << a;
        std::ofstream(fs::path(out_dir) / "B.csv") << b;
        out << "# A\n" << a << "# B\n" << b;
        return 0;
    }
    if (c.format == "table") {
        out << "Gluing equations\n";
        for (std::size_t j = 0; j < S.A.rows(); ++j) out << "  " << format_gluing_equation(S.A.row(j), tri.shape_names) << '\n';
        out << "Q-matching equations\n";
        for (std::size_t j = 0; j < S.B.rows(); ++j) out << "  " << format_matching_equation(S.B.row(j), tri.quad_names) << '\n';
        out << "A\n" << matrix_to_csv(S.A) << "B\n" << matrix_to_csv(S.B);
        return 0;
    }
    json doc;
    doc["manifold"] = tri.name;
    doc["tetrahedra"] = tri.size();
    doc["A"] = matrix_json(S.A);
    doc["B"] = matrix_json(S.B);
    doc["gluing_equations"] = json::array();
    for (std::size_t j = 0; j < S.A.rows(); ++j) doc["gluing_equations"].push_back(format_gluing_equation(S.A.row(j), tri.shape_names));
    doc["matching_equations"] = json::array();
    for (std::size_t j = 0; j < S.B.rows(); ++j) doc["matching_equations"].push_back(format_matching_equation(S.B.row(j), tri.quad_names));
    out << doc.dump(2) << '\n';
    return 0;
}

struct VertexRow {
    IntVector N;
    TropicalPoint xi;
    std::vector<Rational> nu;
    std::optional<SlopeReport> slopes;
    std::optional<Certificate> certificate;
};

std::string slope_cell(const VertexRow& r) {
    if (!r.slopes) return "";
    std::vector<std::string> parts;
    for (const auto& cs : r.slopes->cusps) parts.push_back(cs.slope ? to_string(*cs.slope) : "undefined");
    return join(parts, ";");
}

json slopes_json(const SlopeReport& rep) {
    json cusps = json::array();
    for (const auto& cs : rep.cusps) {
        json c{{"cusp", cs.cusp},
               {"nu_meridian", rational_json(cs.nu_meridian)},
               {"nu_longitude", rational_json(cs.nu_longitude)},
               {"slope", cs.slope ? rational_json(*cs.slope) : json(nullptr)}};
        if (!cs.note.empty()) c["note"] = cs.note;
        cusps.push_back(c);
    }
    return {{"cusps", cusps}, {"boundary_vector", vector_json(rep.boundary_vector)}};
}

VertexRow vertex_row(const GluingSystem& S, const IdealTriangulation& tri, const RationalVector& N, bool certify) {
    VertexRow row;
    row.N = primitive_integer_multiple(N).vector;
    row.xi = quads_to_xi(N);
    for (const auto& c : tri.curves()) row.nu.push_back(nu_evaluate(S, N, c));
    try {
        row.slopes = boundary_slopes(S, N, tri);
    } catch (const MissingBasisError&) {
    }
    if (certify) row.certificate = nontriviality_certificate(S, N, tri.curves());
    return row;
}

void emit_vertex_rows(const Common& c, const IdealTriangulation& tri, const std::vector<VertexRow>& rows,
                      bool certify, std::ostream& out) {
    if (c.format == "json") {
        json doc;
        doc["manifold"] = tri.name;
        doc["curves"] = json::array();
        for (const auto& cv : tri.curves()) doc["curves"].push_back(cv.name);
        doc["vertices"] = json::array();
        for (const auto& r : rows) {
            json v;
            v["N"] = vector_json(r.N);
            v["xi"] = vector_json(r.xi.xi);
            v["xi_unit"] = r.xi.unit;
            json nu = json::object();
            for (std::size_t k = 0; k < r.nu.size(); ++k) nu[tri.curves()[k].name] = rational_json(r.nu[k]);
            v["nu"] = nu;
            v["slopes"] = r.slopes ? slopes_json(*r.slopes) : json(nullptr);
            if (certify) {
                v["certificate"] = to_string(r.certificate->verdict);
                if (!r.certificate->witness.empty()) v["witness"] = r.certificate->witness;
            }
            doc["vertices"].push_back(v);
        }
        out << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::string> head{"solution"};
    for (const auto& cv : tri.curves()) head.push_back("nu(" + cv.name + ")");
    head.push_back("slope");
    if (certify) head.push_back("certificate");
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) {
        std::vector<std::string> cells{c.format == "csv" ? "\"" + vec_str(r.N) + "\"" : vec_str(r.N)};
        for (const auto& v : r.nu) cells.push_back(to_string(v));
        cells.push_back(slope_cell(r));
        if (certify) cells.push_back(to_string(r.certificate->verdict));
        table.push_back(cells);
    }
    if (c.format == "csv")
        print_csv(out, head, table);
    else
        print_table(out, head, table);
}

int cmd_ideal_points(const Common& c, unsigned jobs, bool certify, std::ostream& out) {
    const auto tri = load(c);
    const auto S = build_gluing_system(tri);
    std::vector<VertexRow> rows;
    for (const auto& v : enumerate_pf_vertices(S, jobs)) rows.push_back(vertex_row(S, tri, to_rational(v), certify));
    emit_vertex_rows(c, tri, rows, certify, out);
    return 0;
}

RationalVector parse_quads(const std::string& s) {
    RationalVector N;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        try {
            N.emplace_back(Rational(item));
        } catch (const std::exception&) {
            throw SchemaError("cannot parse quad coordinate '" + item + "'");
        }
    }
    return N;
}

json spine_json(const SpineDescriptor& d) {
    json tets = json::array(), faces = json::array();
    for (const auto& t : d.tetrahedra)
        tets.push_back({{"tet", t.tet},
                        {"length", rational_json(t.length)},
                        {"quad", t.quad ? json(*t.quad) : json(nullptr)},
                        {"end0", t.end0},
                        {"end1", t.end1}});
    for (const auto& f : d.faces)
        faces.push_back({{"tet", f.tet},
                         {"face", f.face},
                         {"other_tet", f.other_tet},
                         {"other_face", f.other_face},
                         {"kind", to_string(f.kind)},
                         {"p", rational_json(f.p)},
                         {"q", rational_json(f.q)},
                         {"r", rational_json(f.r)},
                         {"s", rational_json(f.s)}});
    return {{"tetrahedra", tets}, {"faces", faces}};
}

int cmd_slopes(const Common& c, const std::vector<std::string>& quads, bool spine, std::ostream& out) {
    const auto tri = load(c);
    const auto S = build_gluing_system(tri);
    std::vector<RationalVector> inputs;
    for (const auto& q : quads) inputs.push_back(parse_quads(q));
    if (inputs.empty())
        for (const auto& v : enumerate_pf_vertices(S)) inputs.push_back(to_rational(v));
    std::vector<VertexRow> rows;
    json detail = json::array();
    for (const auto& N : inputs) {
        if (N.size() != 3 * tri.size()) throw DimensionError("quad coordinate has the wrong length");
        if (!is_admissible(N)) throw AdmissibilityError("quad coordinate is not admissible");
        rows.push_back(vertex_row(S, tri, N, true));
        const auto surf = integral_surface(N);
        json d{{"N", vector_json(N)},
               {"integral", vector_json(surf.minimal)},
               {"doubled", vector_json(surf.doubled)},
               {"scaling", rational_json(surf.scaling)}};
        if (!surf.warning.empty()) d["warning"] = surf.warning;
        d["slopes"] = rows.back().slopes ? slopes_json(*rows.back().slopes) : json(nullptr);
        d["certificate"] = to_string(rows.back().certificate->verdict);
        if (spine) d["spine"] = spine_json(spine_descriptor(N, tri));
        detail.push_back(d);
    }
    if (c.format == "json") {
        out << json{{"manifold", tri.name}, {"surfaces", detail}}.dump(2) << '\n';
        return 0;
    }
    emit_vertex_rows(c, tri, rows, true, out);
    return 0;
}

int cmd_solve(const Common& c, const SolveOptions& base, const std::vector<std::string>& start, std::ostream& out) {
    const auto tri = load(c);
    const auto S = build_gluing_system(tri);
    SolveOptions opts = base;
    for (const auto& s : start) opts.initial.push_back(parse_complex(s));
    const auto res = solve(S, tri.curves(), opts);
    const double vol = volume(res.shapes);
    if (c.format == "json") {
        json doc{{"manifold", tri.name},
                 {"complete", opts.complete},
                 {"shapes", shapes_json(tri, res.shapes)},
                 {"iterations", res.iterations},
                 {"attempts", res.attempts},
                 {"residual", res.residual},
                 {"volume", vol}};
        out << doc.dump(2) << '\n';
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < res.shapes.size(); ++t)
        rows.push_back({tri.shape_names[t], fmt(res.shapes[t][0]), fmt(res.shapes[t][1]), fmt(res.shapes[t][2])});
    const std::vector<std::string> head{"tet", "z", "z'", "z''"};
    if (c.format == "csv")
        print_csv(out, head, rows);
    else {
        print_table(out, head, rows);
        out << "iterations " << res.iterations << ", residual " << fmt(res.residual) << ", volume " << fmt(vol) << '\n';
    }
    return 0;
}

int cmd_volume(const Common& c, const NumericInput& in, std::ostream& out) {
    const auto tri = load(c);
    const auto Z = resolve_shapes(tri, in);
    const double vol = volume(Z);
    if (c.format == "json")
        out << json{{"manifold", tri.name}, {"shapes", shapes_json(tri, Z)}, {"volume", vol}}.dump(2) << '\n';
    else if (c.format == "csv")
        out << "volume\n" << fmt(vol) << '\n';
    else
        out << "volume " << fmt(vol) << '\n';
    return 0;
}

int cmd_holonomy(const Common& c, const NumericInput& in, const std::vector<std::string>& names, std::ostream& out) {
    const auto tri = load(c);
    std::vector<const PeripheralCurve*> curves;
    if (names.empty())
        for (const auto& cv : tri.curves()) curves.push_back(&cv);
    for (const auto& n : names) curves.push_back(&tri.curve(n));
    const auto Z = resolve_shapes(tri, in);
    json list = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto* cv : curves) {
        const Complex mu = holonomy_eval(Z, *cv);
        const Complex t2 = trace_squared(Z, *cv);
        list.push_back({{"name", cv->name},
                        {"cusp", cv->cusp},
                        {"length", cv->length()},
                        {"mu_exponents", vector_json(cv->mu)},
                        {"sign", cv->sign},
                        {"nu", vector_json(cv->nu)},
                        {"mu", complex_json(mu)},
                        {"trace_squared", complex_json(t2)}});
        rows.push_back({cv->name, vec_str(cv->mu), std::to_string(cv->sign), fmt(mu), fmt(t2)});
    }
    if (c.format == "json") {
        out << json{{"manifold", tri.name}, {"shapes", shapes_json(tri, Z)}, {"curves", list}}.dump(2) << '\n';
        return 0;
    }
    const std::vector<std::string> head{"curve", "mu exponents", "sign", "mu", "trace^2"};
    if (c.format == "csv")
        print_csv(out, head, rows);
    else
        print_table(out, head, rows);
    return 0;
}

int cmd_develop(const Common& c, const NumericInput& in, std::ostream& out) {
    const auto tri = load(c);
    const auto Z = resolve_shapes(tri, in);
    const auto dev = develop(tri, Z);
    json tets = json::array(), pairs = json::array(), curves = json::array();
    for (const auto& d : dev.tetrahedra) {
        json verts = json::array();
        for (const auto& v : d.vertices) verts.push_back(point_json(v));
        tets.push_back({{"tet", d.tet},
                        {"parent", d.parent},
                        {"via_face", d.via_face},
                        {"vertices", verts},
                        {"cross_ratio", complex_json(d.cross_ratio)}});
    }
    for (const auto& p : dev.pairings)
        pairs.push_back({{"tet", p.tet},
                         {"face", p.face},
                         {"other_tet", p.other_tet},
                         {"other_face", p.other_face},
                         {"matrix", matrix2_json(p.matrix)},
                         {"det", complex_json(p.matrix.determinant())},
                         {"trace_squared", complex_json(trace_squared(p.matrix))},
                         {"peripheral", p.peripheral},
                         {"fixed_point", p.fixed_point ? point_json(*p.fixed_point) : json(nullptr)}});
    for (const auto& h : dev.curves)
        curves.push_back({{"name", h.name}, {"matrix", matrix2_json(h.matrix)}, {"trace_squared", complex_json(h.trace_squared)}});
    if (c.format == "json") {
        out << json{{"manifold", tri.name}, {"shapes", shapes_json(tri, Z)}, {"tetrahedra", tets},
                    {"face_pairings", pairs}, {"curve_holonomy", curves}}
                   .dump(2)
            << '\n';
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : dev.pairings)
        rows.push_back({std::to_string(p.tet) + ":" + std::to_string(p.face),
                        std::to_string(p.other_tet) + ":" + std::to_string(p.other_face), fmt(trace_squared(p.matrix)),
                        p.peripheral ? "yes" : "no"});
    for (const auto& h : dev.curves) rows.push_back({h.name, "", fmt(h.trace_squared), "yes"});
    const std::vector<std::string> head{"pairing", "onto", "trace^2", "peripheral"};
    if (c.format == "csv")
        print_csv(out, head, rows);
    else
        print_table(out, head, rows);
    return 0;
}

std::vector<PathPoint> load_path(const std::string& file, std::size_t tets) {
    std::ifstream in(file);
    if (!in) throw SchemaError("cannot open path file '" + file + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed path file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array())
        throw SchemaError("path file needs a 'samples' array");
    std::vector<PathPoint> path;
    for (const auto& s : doc["samples"]) {
        if (!s.is_object() || !s.contains("shapes") || !s["shapes"].is_array() || s["shapes"].size() != tets)
            throw SchemaError("each sample needs 'shapes' with one [re, im] per tetrahedron");
        std::vector<Complex> z;
        for (const auto& x : s["shapes"]) {
            if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
                throw SchemaError("shape must be [re, im]");
            z.emplace_back(x[0].get<double>(), x[1].get<double>());
        }
        const double r = s.contains("r") && s["r"].is_number() ? s["r"].get<double>() : double(path.size());
        path.push_back({r, ShapeAssignment::from_z(z)});
    }
    return path;
}

int cmd_degenerate(const Common& c, const std::string& path_file, bool builtin, std::size_t samples,
                   const DegenerationOptions& opts, std::ostream& out) {
    if (builtin == !path_file.empty()) throw SchemaError("give exactly one of --path and --fig8-builtin");
    const auto tri = c.file.empty() && builtin ? fig8_triangulation() : load(c);
    const auto S = build_gluing_system(tri);
    if (builtin && tri.size() != 2) throw DimensionError("the built-in path needs a two-tetrahedron triangulation");
    const auto path = builtin ? fig8_builtin_path(samples) : load_path(path_file, tri.size());

    std::vector<IntVector> vertices = enumerate_pf_vertices(S);
    std::vector<TropicalPoint> candidates;
    for (const auto& v : vertices) candidates.push_back(quads_to_xi(to_rational(v)));
    const auto rep = track_degeneration(S, path, candidates, opts);
    const std::string verdict = rep.verdict ? vec_str(vertices[*rep.verdict]) : "NONE";

    if (c.format == "json") {
        json doc;
        doc["manifold"] = tri.name;
        doc["candidates"] = json::array();
        for (std::size_t k = 0; k < vertices.size(); ++k)
            doc["candidates"].push_back({{"N", vector_json(vertices[k])}, {"xi_unit", candidates[k].unit}});
        doc["samples"] = json::array();
        for (const auto& s : rep.samples)
            doc["samples"].push_back({{"r", s.r},
                                      {"shapes", shapes_json(tri, s.shapes)},
                                      {"u", s.u},
                                      {"normalized_log", s.normalized_log},
                                      {"distances", s.distances}});
        doc["verdict"] = verdict;
        if (rep.verdict) doc["verdict_N"] = vector_json(vertices[*rep.verdict]);
        if (builtin && !rep.samples.empty()) {
            const auto& Z = rep.samples.back().shapes;
            const Complex w = Z[0][0], z = Z[1][0];
            doc["final_limits"] = {{"one_minus_wz", complex_json(1.0 - w * z)},
                                   {"w4_z2_one_minus_z6", complex_json(std::pow(w, 4) * z * z * std::pow(1.0 - z, 6))}};
        }
        out << doc.dump(2) << '\n';
        return 0;
    }
    std::vector<std::string> head{"r", "u"};
    for (const auto& v : vertices) head.push_back("d" + vec_str(v));
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : rep.samples) {
        std::vector<std::string> r{fmt(s.r), fmt(s.u)};
        for (double d : s.distances) r.push_back(fmt(d));
        rows.push_back(r);
    }
    if (c.format == "csv") {
        for (auto& h : head) h = "\"" + h + "\"";
        print_csv(out, head, rows);
    } else {
        print_table(out, head, rows);
        out << "verdict " << verdict << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deformation varieties, ideal points and boundary slopes of ideal triangulations", "tropodegen"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "tropodegen 0.1.0");

    Common common;
    auto add_common = [&](CLI::App* sub, bool file_required = true) {
        auto* opt = sub->add_option("file", common.file, "triangulation JSON file");
        if (file_required) opt->required();
        sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    };
    NumericInput numeric;
    auto add_numeric = [&](CLI::App* sub) {
        sub->add_option("--shape", numeric.shapes, "shape z per tetrahedron as re,im (default: complete structure)");
        sub->add_option("--tol", numeric.tol, "solver tolerance");
    };

    std::string out_dir = ".";
    auto* equations = app.add_subcommand("equations", "gluing and Q-matching equations");
    add_common(equations);
    equations->add_option("--out-dir", out_dir, "directory for A.csv and B.csv with --format csv");

    unsigned jobs = 1;
    bool certify = false;
    auto* ideal = app.add_subcommand("ideal-points", "vertices of the admissible solution space");
    add_common(ideal);
    ideal->add_option("--jobs", jobs, "worker threads for the enumeration")->check(CLI::Range(1u, 256u));
    ideal->add_flag("--certify", certify, "add the non-triviality certificate column");

    std::vector<std::string> quads;
    bool spine = false;
    auto* slopes = app.add_subcommand("slopes", "boundary slopes, integral surfaces and spines of quad solutions");
    add_common(slopes);
    slopes->add_option("--quads", quads, "comma separated quad coordinates (default: all vertices)");
    slopes->add_flag("--spine", spine, "include the dual spine descriptor");

    SolveOptions solve_opts;
    std::vector<std::string> start;
    std::optional<double> solve_tol;
    auto* solve_cmd = app.add_subcommand("solve", "solve the gluing equations");
    add_common(solve_cmd);
    solve_cmd->add_flag("--complete", solve_opts.complete, "impose completeness on the supplied curves");
    solve_cmd->add_option("--start", start, "initial z per tetrahedron as re,im");
    solve_cmd->add_option("--fix", solve_opts.fixed, "tetrahedron held at its initial shape");
    solve_cmd->add_option("--tol", solve_tol, "tolerance on the multiplicative residual");
    solve_cmd->add_option("--max-iter", solve_opts.max_iterations, "Newton iterations per attempt");
    solve_cmd->add_option("--retries", solve_opts.retries, "perturbed restarts");
    solve_cmd->add_option("--seed", solve_opts.seed, "seed for perturbed restarts");

    auto* volume_cmd = app.add_subcommand("volume", "volume of a shape assignment");
    add_common(volume_cmd);
    add_numeric(volume_cmd);

    std::vector<std::string> curve_names;
    auto* holonomy = app.add_subcommand("holonomy", "peripheral holonomies and traces");
    add_common(holonomy);
    add_numeric(holonomy);
    holonomy->add_option("--curve", curve_names, "curve name (default: all)");

    auto* develop_cmd = app.add_subcommand("develop", "developing map and face-pairing matrices");
    add_common(develop_cmd);
    add_numeric(develop_cmd);

    std::string path_file;
    bool builtin = false;
    std::size_t samples = 20;
    DegenerationOptions deg_opts;
    auto* degenerate = app.add_subcommand("degenerate", "track a path toward ideal points");
    add_common(degenerate, false);
    degenerate->add_option("--path", path_file, "JSON file with samples [{r, shapes: [[re, im], ...]}]");
    degenerate->add_flag("--fig8-builtin", builtin, "use the analytic figure-eight path w = r^2 w0");
    degenerate->add_option("--samples", samples, "number of samples r = 2^-1 ... 2^-K")->check(CLI::Range(1, 60));
    degenerate->add_option("--threshold", deg_opts.threshold, "final distance threshold");
    degenerate->add_option("--window", deg_opts.window, "samples over which the distance must decrease");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (equations->parsed()) return cmd_equations(common, out_dir, out);
        if (ideal->parsed()) return cmd_ideal_points(common, jobs, certify, out);
        if (slopes->parsed()) return cmd_slopes(common, quads, spine, out);
        if (solve_cmd->parsed()) {
            solve_opts.tolerance = solve_tol.value_or(default_tolerance());
            return cmd_solve(common, solve_opts, start, out);
        }
        if (volume_cmd->parsed()) return cmd_volume(common, numeric, out);
        if (holonomy->parsed()) return cmd_holonomy(common, numeric, curve_names, out);
        if (develop_cmd->parsed()) return cmd_develop(common, numeric, out);
        if (degenerate->parsed()) return cmd_degenerate(common, path_file, builtin, samples, deg_opts, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Input ? 2 : 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

}  // namespace tropodegen
