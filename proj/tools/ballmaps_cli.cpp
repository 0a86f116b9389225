#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ballmaps/bounds.hpp"
#include "ballmaps/catalog.hpp"
#include "ballmaps/families.hpp"
#include "ballmaps/herm_form.hpp"
#include "ballmaps/io.hpp"
#include "ballmaps/jets.hpp"
#include "ballmaps/pullback.hpp"
#include "ballmaps/zero_sets.hpp"

using namespace ballmaps;

namespace {

// Accumulates one report in both output modes; exactly one of them is
// printed at the end. All exact values travel as strings, never floats.
struct Output {
    bool json = false;
    Json doc = Json::object();
    std::vector<std::string> lines;

    void line(const std::string& text) { lines.push_back(text); }
    void kv(const std::string& key, const std::string& value) {
        doc[key] = value;
        lines.push_back(key + ": " + value);
    }
    void kv(const std::string& key, const char* value) { kv(key, std::string(value)); }
    void kv(const std::string& key, long value) {
        doc[key] = value;
        lines.push_back(key + ": " + std::to_string(value));
    }
    void kv(const std::string& key, int value) { kv(key, static_cast<long>(value)); }
    void kv(const std::string& key, bool value) {
        doc[key] = value;
        lines.push_back(key + std::string(": ") + (value ? "true" : "false"));
    }
    void flush() const {
        if (json) {
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto& l : lines) std::cout << l << "\n";
        }
    }
};

std::string definiteness_name(Definiteness v) {
    switch (v) {
        case Definiteness::PD: return "PD";
        case Definiteness::PSD: return "PSD";
        case Definiteness::NOT_PSD: return "NOT_PSD";
    }
    throw std::logic_error("unknown definiteness");
}

void put_form(Output& out, const std::string& key, const HermForm& F) {
    out.doc[key] = form_to_json(F);
    out.line(key + ":");
    for (const auto& [k, c] : F.entries) {
        if (grlex_less(k.second, k.first)) continue;
        out.line("  " + index_str(k.first) + " x " + index_str(k.second) + " = " + crat_str(c));
    }
}

Json cpoly_json(const CPoly& p) {
    Json doc;
    doc["nvars"] = p.nvars;
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms) {
        Json t;
        t["alpha"] = Json::array();
        for (int i = 0; i < m.nvars(); ++i) t["alpha"].push_back(m[i]);
        t["re"] = rat_str(c.re);
        t["im"] = rat_str(c.im);
        terms.push_back(t);
    }
    doc["terms"] = terms;
    return doc;
}

void put_cpoly(Output& out, const std::string& key, const CPoly& p) {
    out.doc[key] = cpoly_json(p);
    out.line(key + ":");
    for (const auto& [m, c] : p.terms) out.line("  " + index_str(m) + " = " + crat_str(c));
}

Json point_json(const std::vector<CRat>& a) {
    Json arr = Json::array();
    for (const CRat& c : a) arr.push_back(Json{{"re", rat_str(c.re)}, {"im", rat_str(c.im)}});
    return arr;
}

std::string point_str(const std::vector<CRat>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + crat_str(a[i]);
    return s + ")";
}

Json parse_inline_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

Rational rational_value(const Json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": expected a rational string \"p/q\"");
    try {
        return rat_parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

// A coordinate is either "p/q" for a real value or {"re": ..., "im": ...}.
CRat coordinate_value(const Json& v, const std::string& where) {
    if (v.is_string()) return CRat(rational_value(v, where));
    if (v.is_object())
        return CRat(rational_value(v.value("re", Json("0")), where + ".re"),
                    rational_value(v.value("im", Json("0")), where + ".im"));
    throw ParseError(where + ": expected \"p/q\" or {\"re\", \"im\"}");
}

std::vector<CRat> parse_point(const Json& arr, const std::string& where) {
    if (!arr.is_array() || arr.empty()) throw ParseError(where + ": expected a nonempty array");
    std::vector<CRat> out;
    int i = 0;
    for (const auto& v : arr) out.push_back(coordinate_value(v, where + "[" + std::to_string(i++) + "]"));
    return out;
}

RatVec parse_rational_vector(const Json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array");
    RatVec out;
    int i = 0;
    for (const auto& v : arr) out.push_back(rational_value(v, where + "[" + std::to_string(i++) + "]"));
    return out;
}

std::string halfspace_str(const Halfspace& h) {
    std::string s = rat_str(h.constant);
    for (std::size_t j = 0; j < h.coeffs.size(); ++j) {
        const Rational& c = h.coeffs[j];
        if (c == 0) continue;
        s += (c > 0 ? " + " : " - ") + rat_str(Rational(abs(c))) + "*l" + std::to_string(j + 1);
    }
    return s + " >= 0";
}

struct Args {
    bool json = false;
    long seed = 12345;
    double tolerance = 1e-9;
    std::string map_path, form_path, pencil_path, q_path;
    std::string lambda_text, direction_text, point_text, points_text;
    std::string formula, mode, id, x_text, y_text, zeta_text;
    int n = 0, N = 0, d = 0, r = 0, k = 0;
    bool d_given = false;
};

int cmd_forms_norm(const Args& a, Output& out) {
    PolyMap f = read_map_file(a.map_path);
    HermForm F = squared_norm_form(f);
    out.kv("n", f.n);
    out.kv("target_dim", f.N);
    out.kv("degree", map_degree(f));
    out.kv("rank", form_rank(F));
    put_form(out, "form", F);
    return 0;
}

int cmd_forms_psd(const Args& a, Output& out) {
    HermForm F = read_form_file(a.form_path);
    PsdCertificate cert = form_definiteness(F);
    out.kv("verdict", definiteness_name(cert.verdict));
    if (cert.is_psd()) {
        out.kv("rank", cert.rank);
        Json pivots = Json::array();
        std::string pivot_line;
        for (const auto& p : cert.pivots) {
            pivots.push_back(rat_str(p));
            pivot_line += (pivot_line.empty() ? "" : ", ") + rat_str(p);
        }
        out.doc["pivots"] = pivots;
        out.line("pivots: " + pivot_line);
    } else {
        Json w = Json::array();
        for (const auto& [m, c] : cert.witness) {
            Json alpha = Json::array();
            for (int i = 0; i < m.nvars(); ++i) alpha.push_back(m[i]);
            w.push_back(Json{{"alpha", alpha}, {"re", rat_str(c.re)}, {"im", rat_str(c.im)}});
            out.line("witness " + index_str(m) + " = " + crat_str(c));
        }
        out.doc["witness"] = w;
        out.doc["witness_value"] = rat_str(cert.witness_value);
        out.line("witness value: " + rat_str(cert.witness_value));
    }
    return cert.is_psd() ? 0 : 1;
}

int cmd_forms_proper(const Args& a, Output& out) {
    HermForm F = a.form_path.empty() ? squared_norm_form(read_map_file(a.map_path))
                                     : read_form_file(a.form_path);
    bool psd = form_definiteness(F).is_psd();
    bool constant = form_is_constant(F);
    bool on_sphere = form_vanishes_on_sphere(form_sub(F, form_constant(F.n, rat(1))));
    bool proper = form_is_proper(F);
    out.kv("psd", psd);
    out.kv("equals_one_on_sphere", on_sphere);
    out.kv("nonconstant", !constant);
    out.kv("proper", proper);
    return proper ? 0 : 1;
}

int cmd_forms_rank(const Args& a, Output& out) {
    HermForm F = read_form_file(a.form_path);
    out.kv("rank", form_rank(F));
    out.kv("support_size", static_cast<long>(form_support(F).size()));
    out.kv("degree", form_map_degree(F));
    return 0;
}

int cmd_families_feasible(const Args& a, Output& out) {
    FormPencil pencil = read_pencil_file(a.pencil_path);
    FeasibleSet fs = feasible_set(pencil);
    out.kv("k", fs.k);
    out.kv("exact", fs.exact);
    if (fs.kind == FeasibleKind::Halfspaces) {
        out.kv("kind", "halfspaces");
        Json hs = Json::array();
        for (const auto& h : fs.halfspaces) {
            Json one;
            one["constant"] = rat_str(h.constant);
            one["coeffs"] = Json::array();
            for (const auto& c : h.coeffs) one["coeffs"].push_back(rat_str(c));
            hs.push_back(one);
            out.line("halfspace: " + halfspace_str(h));
        }
        out.doc["halfspaces"] = hs;
        if (fs.has_interval) {
            out.doc["interval"] = Json::array({rat_str(fs.lo), rat_str(fs.hi)});
            out.line("interval: [" + rat_str(fs.lo) + ", " + rat_str(fs.hi) + "]");
        }
    } else if (fs.kind == FeasibleKind::Interval) {
        out.kv("kind", "oracle-only interval");
        out.doc["interval"] = Json::array({rat_str(fs.lo), rat_str(fs.hi)});
        out.doc["interval_outer"] = Json::array({rat_str(fs.lo_outer), rat_str(fs.hi_outer)});
        out.line("feasible interval: [" + rat_str(fs.lo) + ", " + rat_str(fs.hi) + "]");
        out.line("outer bracket: [" + rat_str(fs.lo_outer) + ", " + rat_str(fs.hi_outer) + "]");
    } else {
        out.kv("kind", "oracle-only box");
        Json box = Json::array();
        for (std::size_t j = 0; j < fs.box.size(); ++j) {
            box.push_back(Json::array({rat_str(fs.box[j].first), rat_str(fs.box[j].second)}));
            out.line("axis l" + std::to_string(j + 1) + ": [" + rat_str(fs.box[j].first) + ", " +
                     rat_str(fs.box[j].second) + "]");
        }
        out.doc["box"] = box;
    }
    return 0;
}

int cmd_families_member(const Args& a, Output& out) {
    FormPencil pencil = read_pencil_file(a.pencil_path);
    RatVec lambda = parse_rational_vector(parse_inline_json(a.lambda_text, "lambda"), "lambda");
    if (static_cast<int>(lambda.size()) != pencil.k)
        throw ParseError("lambda: expected " + std::to_string(pencil.k) + " entries");
    HermForm F = eval_pencil(pencil, lambda);
    PsdCertificate cert = pencil_membership(pencil, lambda);
    out.kv("membership", definiteness_name(cert.verdict));
    bool proper = form_is_proper(F);
    out.kv("proper", proper);
    out.kv("rank", form_rank(F));
    out.kv("degree", form_map_degree(F));
    put_form(out, "member", F);
    return proper ? 0 : 1;
}

int cmd_families_rank(const Args& a, Output& out) {
    FormPencil pencil = read_pencil_file(a.pencil_path);
    out.kv("rank", family_rank(pencil, static_cast<unsigned>(a.seed)));
    return 0;
}

int cmd_families_degree(const Args& a, Output& out) {
    FormPencil pencil = read_pencil_file(a.pencil_path);
    out.kv("degree", family_degree(pencil, static_cast<unsigned>(a.seed)));
    return 0;
}

int cmd_families_rank_gap(const Args& a, Output& out) {
    FormPencil pencil = read_pencil_file(a.pencil_path);
    GapCheck gap = check_family_rank_gap(pencil, static_cast<unsigned>(a.seed));
    out.kv("rank", gap.rank);
    out.kv("threshold", gap.threshold);
    out.kv("holds", gap.holds);
    return gap.holds ? 0 : 1;
}

int cmd_families_degree_bound(const Args& a, Output& out) {
    FormPencil pencil = read_pencil_file(a.pencil_path);
    FamilyDegreeCheck db = check_family_degree_bound(pencil, static_cast<unsigned>(a.seed));
    out.kv("degree", db.degree);
    out.kv("rank", db.rank);
    out.kv("k", db.k);
    out.kv("bound", rat_str(db.bound));
    out.kv("holds", db.holds);
    return db.holds ? 0 : 1;
}

int cmd_families_boundary(const Args& a, Output& out) {
    FormPencil pencil = read_pencil_file(a.pencil_path);
    RatVec dir = parse_rational_vector(parse_inline_json(a.direction_text, "direction"), "direction");
    if (static_cast<int>(dir.size()) != pencil.k)
        throw ParseError("direction: expected " + std::to_string(pencil.k) + " entries");
    BoundaryElement be = boundary_element(pencil, dir);
    out.kv("exact", be.exact);
    out.kv("step", rat_str(be.step));
    out.kv("interior_rank", be.interior_rank);
    out.kv("boundary_rank", be.boundary_rank);
    Json lam = Json::array();
    std::string lam_line;
    for (const auto& l : be.lambda) {
        lam.push_back(rat_str(l));
        lam_line += (lam_line.empty() ? "" : ", ") + rat_str(l);
    }
    out.doc["lambda"] = lam;
    out.line("lambda: (" + lam_line + ")");
    return 0;
}

int cmd_bounds_eval(const Args& a, Output& out) {
    BoundKind kind = bound_kind_from_name(a.formula);
    BoundFormula f = bound_formula(kind);
    Rational value = bound_eval(kind, a.n, a.N);
    out.kv("formula", f.name);
    out.kv("sharpness", sharpness_name(f.sharpness));
    out.kv("n", a.n);
    out.kv("N", a.N);
    out.kv("value", rat_str(value));
    return 0;
}

int cmd_bounds_vmap(const Args& a, Output& out) {
    InvariantMapData inv = build_invariant_map(a.n);
    out.kv("n", a.n);
    out.kv("source_dim", 2);
    out.kv("degree", inv.degree);
    out.kv("rank", form_rank(form_from_real(inv.real_form)));
    Json coeffs = Json::array();
    std::string coeff_line;
    for (const auto& u : inv.squared_coeffs) {
        coeffs.push_back(rat_str(u));
        coeff_line += (coeff_line.empty() ? "" : ", ") + rat_str(u);
    }
    out.doc["squared_coeffs"] = coeffs;
    out.line("interior squared coefficients: " + coeff_line);
    Json terms = Json::array();
    for (const auto& [m, c] : inv.real_form.terms) {
        terms.push_back(Json{{"alpha", Json::array({m[0], m[1]})}, {"coeff", rat_str(c)}});
        out.line("term " + index_str(m) + " = " + rat_str(c));
    }
    out.doc["real_form"] = terms;
    bool proper = real_form_is_proper_on_hyperplane(inv.real_form);
    out.kv("proper_on_hyperplane", proper);
    return proper ? 0 : 1;
}

int cmd_bounds_pullback(const Args& a, Output& out) {
    PolyMap g = read_map_file(a.map_path);
    if (g.n != a.n)
        throw std::invalid_argument("map is defined on the " + std::to_string(g.n) +
                                    " ball, not n = " + std::to_string(a.n));
    PullbackResult res = pullback(g);
    out.kv("n", res.source_dim);
    out.kv("map_degree", res.g_degree);
    out.kv("expected_degree", res.expected_degree);
    out.kv("composed_degree", res.composed_degree);
    out.kv("attempts", res.attempts);
    out.kv("proper", res.proper);
    bool multiplicative = res.composed_degree == res.expected_degree;
    out.kv("degree_multiplicative", multiplicative);
    return res.proper && multiplicative ? 0 : 1;
}

int cmd_zeros_hq(const Args& a, Output& out) {
    CPoly q = read_scalar_file(a.q_path);
    int d = a.d_given ? a.d : default_homogenization_degree(q);
    CPoly hq = homogenize_denominator(q, d);
    out.kv("n", q.nvars);
    out.kv("d", d);
    put_cpoly(out, "hq", hq);
    return 0;
}

int cmd_zeros_soq(const Args& a, Output& out) {
    CPoly q = read_scalar_file(a.q_path);
    int d = a.d_given ? a.d : default_homogenization_degree(q);
    std::vector<std::vector<CRat>> proposed;
    if (!a.points_text.empty()) {
        Json arr = parse_inline_json(a.points_text, "points");
        if (!arr.is_array()) throw ParseError("points: expected an array of points");
        int i = 0;
        for (const auto& p : arr) proposed.push_back(parse_point(p, "points[" + std::to_string(i++) + "]"));
    }
    CandidateSet s = s_of_q(q, d, proposed);
    out.kv("d", d);
    out.kv("status", candidate_status_name(s.status));
    Json pts = Json::array();
    for (const auto& p : s.points) {
        pts.push_back(point_json(p));
        out.line("point: " + point_str(p));
    }
    out.doc["points"] = pts;
    out.kv("point_count", static_cast<long>(s.points.size()));
    out.kv("unresolved_factors", static_cast<long>(s.unresolved.size()));
    return 0;
}

int cmd_zeros_check(const Args& a, Output& out) {
    CPoly q = read_scalar_file(a.q_path);
    int d = a.d_given ? a.d : default_homogenization_degree(q);
    std::vector<CRat> point = parse_point(parse_inline_json(a.point_text, "point"), "point");
    if (static_cast<int>(point.size()) != q.nvars)
        throw ParseError("point: expected " + std::to_string(q.nvars) + " coordinates");
    bool belongs = candidate_check(q, d, point);
    out.kv("d", d);
    out.kv("belongs", belongs);
    return belongs ? 0 : 1;
}

int cmd_zeros_homogenize(const Args& a, Output& out) {
    PolyMap p = read_map_file(a.map_path);
    Homogenization h = homogenize_by_tensor(p);
    ZeroSetReport z = zero_set_theorem_check(p);
    out.kv("degree", map_degree(p));
    out.kv("vanishing_order", vanishing_order(p));
    out.kv("steps", h.steps);
    out.kv("homogenized_target_dim", h.h.N);
    out.kv("zero_set", z.zero_set_empty ? "empty" : "origin only");
    return 0;
}

int cmd_zeros_prescribe(const Args& a, Output& out) {
    Json arr = parse_inline_json(a.points_text, "points");
    if (!arr.is_array() || arr.empty()) throw ParseError("points: expected a nonempty array of points");
    std::vector<std::vector<CRat>> points;
    int i = 0;
    for (const auto& p : arr) points.push_back(parse_point(p, "points[" + std::to_string(i++) + "]"));
    RationalMap f = map_with_prescribed_zeros(points);
    bool proper = rational_map_is_proper(f);
    bool zeros_hit = true;
    for (const auto& p : points) {
        for (const CRat& v : map_eval(f.p, p)) zeros_hit = zeros_hit && v.is_zero();
    }
    out.kv("n", f.p.n);
    out.kv("target_dim", f.p.N);
    out.kv("numerator_degree", map_degree(f.p));
    out.kv("denominator_degree", f.q.degree());
    out.kv("proper", proper);
    out.kv("zeros_verified", zeros_hit);
    out.doc["numerator"] = map_to_json(f.p);
    put_cpoly(out, "denominator", f.q);
    return proper && zeros_hit ? 0 : 1;
}

int cmd_jets_complete(const Args& a, Output& out) {
    HermForm A = read_form_file(a.form_path);
    CompletedForm c = jet_complete({a.n, a.d, A});
    out.kv("n", a.n);
    out.kv("d", a.d);
    out.kv("unknowns", c.unknowns);
    out.kv("equations", c.equations);
    out.kv("system_rank", c.rank);
    out.kv("solution_dimension", jet_solution_dimension(a.n, a.d));
    PsdCertificate cert = form_definiteness(c.C, indices_up_to_degree(a.n, a.d));
    out.kv("completion_definiteness", definiteness_name(cert.verdict));
    bool proper = form_is_proper(c.C);
    out.kv("proper", proper);
    put_form(out, "completion", c.C);
    return proper ? 0 : 1;
}

int cmd_jets_demo(const Args& a, Output& out) {
    Rational x = rat_parse(a.x_text);
    Rational y = rat_parse(a.y_text);
    std::size_t comma = a.zeta_text.find(',');
    CRat zeta = comma == std::string::npos
                    ? CRat(rat_parse(a.zeta_text))
                    : CRat(rat_parse(a.zeta_text.substr(0, comma)),
                           rat_parse(a.zeta_text.substr(comma + 1)));
    bool belongs = spectrahedron_demo(x, y, zeta);
    out.kv("x", rat_str(x));
    out.kv("y", rat_str(y));
    out.kv("zeta", crat_str(zeta));
    out.kv("belongs", belongs);
    return belongs ? 0 : 1;
}

int cmd_jets_stabilize(const Args& a, Output& out) {
    HermForm R = read_form_file(a.form_path);
    StabilizeMode mode = a.mode == "pd" ? StabilizeMode::PD : StabilizeMode::PSD;
    Stabilization s = stabilize(R, mode);
    out.kv("mode", a.mode);
    out.kv("m", s.m);
    out.kv("rank", form_rank(s.F));
    put_form(out, "stabilized", s.F);
    return 0;
}

int cmd_jets_extend(const Args& a, Output& out) {
    PolyMap g = read_map_file(a.map_path);
    CompletionReport rep = complete_to_proper(g, a.d);
    out.kv("d", a.d);
    out.kv("direct_psd", rep.direct_psd);
    out.kv("m", rep.m);
    out.kv("slack", rat_str(rep.slack));
    bool proper = form_is_proper(rep.total);
    out.kv("proper", proper);
    put_form(out, "completing_form", rep.F);
    return proper ? 0 : 1;
}

int cmd_catalog_list(const Args&, Output& out) {
    Json entries = Json::array();
    for (const auto& e : catalog()) {
        entries.push_back(Json{{"id", e.id},
                               {"title", e.title},
                               {"n", e.n},
                               {"rank", e.rank},
                               {"degree", e.degree},
                               {"dim", e.dim}});
        out.line(e.id + "  (n=" + std::to_string(e.n) + ", rank=" + std::to_string(e.rank) +
                 ", degree=" + std::to_string(e.degree) + ", dim=" + std::to_string(e.dim) + ")  " +
                 e.title);
    }
    out.doc["entries"] = entries;
    return 0;
}

int cmd_catalog_verify(const Args& a, Output& out) {
    VerifyReport rep = catalog_verify(a.id);
    out.doc["id"] = rep.id;
    out.doc["pass"] = rep.pass;
    Json lines = Json::array();
    for (const auto& l : rep.lines) {
        lines.push_back(Json{{"name", l.name}, {"detail", l.detail}, {"pass", l.pass}});
        out.line(std::string(l.pass ? "PASS" : "FAIL") + "  " + l.name +
                 (l.detail.empty() ? "" : "  [" + l.detail + "]"));
    }
    out.doc["checks"] = lines;
    out.line(std::string(rep.pass ? "PASS" : "FAIL") + "  " + rep.id);
    return rep.pass ? 0 : 1;
}

int cmd_quadruple(const Args& a, Output& out) {
    QuadrupleReport rep = quadruple_report(a.n, a.r, a.d, a.k);
    out.kv("n", rep.n);
    out.kv("r", rep.r);
    out.kv("d", rep.d);
    out.kv("k", rep.k);
    out.kv("verdict", quadruple_verdict_name(rep.verdict));
    out.kv("reason", rep.reason);
    if (!rep.witness.empty()) out.kv("witness", rep.witness);
    Json notes = Json::array();
    for (const auto& note : rep.notes) {
        notes.push_back(note);
        out.line("note: " + note);
    }
    out.doc["notes"] = notes;
    return rep.verdict == QuadrupleVerdict::INVALID_BY_BOUND ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    Args args;
    std::function<int(const Args&, Output&)> action;

    CLI::App app{"exact arithmetic for proper polynomial and rational maps between unit balls"};
    app.require_subcommand(1);
    app.add_flag("--json", args.json, "emit a JSON report instead of text");
    app.add_option("--seed", args.seed, "seed for random-point probes");
    app.add_option("--tolerance", args.tolerance, "tolerance for the numeric layer only");

    auto set = [&](std::function<int(const Args&, Output&)> fn) {
        return [&action, fn] { action = fn; };
    };

    auto* forms = app.add_subcommand("forms", "Hermitian coefficient forms of maps");
    forms->require_subcommand(1);
    {
        auto* c = forms->add_subcommand("norm", "squared norm form of a polynomial map");
        c->add_option("--map", args.map_path, "map file")->required();
        c->callback(set(cmd_forms_norm));
    }
    {
        auto* c = forms->add_subcommand("psd", "definiteness certificate of a form");
        c->add_option("--form", args.form_path, "form file")->required();
        c->callback(set(cmd_forms_psd));
    }
    {
        auto* c = forms->add_subcommand("proper", "is the form that of a proper map");
        c->add_option("--form", args.form_path, "form file");
        c->add_option("--map", args.map_path, "map file");
        c->callback([&] {
            if (args.form_path.empty() == args.map_path.empty())
                throw CLI::ValidationError("forms proper", "pass exactly one of --form or --map");
            action = cmd_forms_proper;
        });
    }
    {
        auto* c = forms->add_subcommand("rank", "rank of a form");
        c->add_option("--form", args.form_path, "form file")->required();
        c->callback(set(cmd_forms_rank));
    }

    auto* families = app.add_subcommand("families", "convex families of proper maps");
    families->require_subcommand(1);
    {
        auto* c = families->add_subcommand("feasible", "parameter set K of a pencil");
        c->add_option("--pencil", args.pencil_path, "pencil file")->required();
        c->callback(set(cmd_families_feasible));
    }
    {
        auto* c = families->add_subcommand("member", "evaluate a member of a pencil");
        c->add_option("--pencil", args.pencil_path, "pencil file")->required();
        c->add_option("--lambda", args.lambda_text, "JSON array of rationals")->required();
        c->callback(set(cmd_families_member));
    }
    {
        auto* c = families->add_subcommand("rank", "generic rank of the family");
        c->add_option("--pencil", args.pencil_path, "pencil file")->required();
        c->callback(set(cmd_families_rank));
    }
    {
        auto* c = families->add_subcommand("degree", "generic degree of the family");
        c->add_option("--pencil", args.pencil_path, "pencil file")->required();
        c->callback(set(cmd_families_degree));
    }
    {
        auto* c = families->add_subcommand("rank-gap",
                                           "origin-preserving families need rank at least n + 2");
        c->add_option("--pencil", args.pencil_path, "pencil file")->required();
        c->callback(set(cmd_families_rank_gap));
    }
    {
        auto* c = families->add_subcommand("degree-bound",
                                           "degree bound at rank minus parameter count");
        c->add_option("--pencil", args.pencil_path, "pencil file")->required();
        c->callback(set(cmd_families_degree_bound));
    }
    {
        auto* c = families->add_subcommand("boundary", "walk to the parameter boundary");
        c->add_option("--pencil", args.pencil_path, "pencil file")->required();
        c->add_option("--direction", args.direction_text, "JSON array of rationals")->required();
        c->callback(set(cmd_families_boundary));
    }

    auto* bounds = app.add_subcommand("bounds", "degree bounds and the invariant family");
    bounds->require_subcommand(1);
    {
        auto* c = bounds->add_subcommand("eval", "evaluate a degree bound formula");
        c->add_option("--formula", args.formula,
                      "one of: monomial-sharp-n2, monomial-general, monomial-large-n, "
                      "rational-general")
            ->required();
        c->add_option("--n", args.n, "source dimension")->required();
        c->add_option("--N", args.N, "target dimension")->required();
        c->callback(set(cmd_bounds_eval));
    }
    {
        auto* c = bounds->add_subcommand("vmap", "group-invariant monomial map of odd degree");
        c->add_option("--n", args.n, "group order; the map has degree 2n - 3")->required();
        c->callback(set(cmd_bounds_vmap));
    }
    {
        auto* c = bounds->add_subcommand("pullback",
                                         "compose a proper map with the rotated invariant map");
        c->add_option("--map", args.map_path, "map file")->required();
        c->add_option("--n", args.n, "source dimension of the map")->required();
        c->callback(set(cmd_bounds_pullback));
    }

    auto* zeros = app.add_subcommand("zeros", "zero sets of proper maps and denominators");
    zeros->require_subcommand(1);
    {
        auto* c = zeros->add_subcommand("hq", "homogenize a denominator in doubled variables");
        c->add_option("--q", args.q_path, "denominator file (single-component map)")->required();
        c->add_option("--d", args.d, "homogenization degree")->check(CLI::PositiveNumber);
        c->callback([&args, &action, c] {
            args.d_given = c->count("--d") > 0;
            action = cmd_zeros_hq;
        });
    }
    {
        auto* c = zeros->add_subcommand("soq", "finite candidate zero set of a denominator");
        c->add_option("--q", args.q_path, "denominator file (single-component map)")->required();
        c->add_option("--d", args.d, "homogenization degree")->check(CLI::PositiveNumber);
        c->add_option("--points", args.points_text, "JSON array of proposed candidate points");
        c->callback([&args, &action, c] {
            args.d_given = c->count("--d") > 0;
            action = cmd_zeros_soq;
        });
    }
    {
        auto* c = zeros->add_subcommand("check", "is a point in the candidate zero set");
        c->add_option("--q", args.q_path, "denominator file (single-component map)")->required();
        c->add_option("--point", args.point_text, "JSON array, entries \"p/q\" or {re, im}")
            ->required();
        c->add_option("--d", args.d, "homogenization degree")->check(CLI::PositiveNumber);
        c->callback([&args, &action, c] {
            args.d_given = c->count("--d") > 0;
            action = cmd_zeros_check;
        });
    }
    {
        auto* c = zeros->add_subcommand("homogenize",
                                        "tensor a proper polynomial map up to homogeneous");
        c->add_option("--map", args.map_path, "map file")->required();
        c->callback(set(cmd_zeros_homogenize));
    }
    {
        auto* c = zeros->add_subcommand("prescribe",
                                        "proper rational map vanishing at given points");
        c->add_option("--points", args.points_text, "JSON array of points inside the ball")
            ->required();
        c->callback(set(cmd_zeros_prescribe));
    }

    auto* jets = app.add_subcommand("jets", "jet completion and stabilization");
    jets->require_subcommand(1);
    {
        auto* c = jets->add_subcommand("complete", "complete a lower-order jet to a proper form");
        c->add_option("--n", args.n, "source dimension")->required();
        c->add_option("--d", args.d, "completion degree")->required();
        c->add_option("--A", args.form_path, "form file for the lower-order block")->required();
        c->callback(set(cmd_jets_complete));
    }
    {
        auto* c = jets->add_subcommand("demo-spectrahedron",
                                       "membership in the quadratic jet parameter region");
        c->add_option("--x", args.x_text, "rational p/q")->required();
        c->add_option("--y", args.y_text, "rational p/q")->required();
        c->add_option("--zeta", args.zeta_text, "complex rational p/q,p/q")->required();
        c->callback(set(cmd_jets_demo));
    }
    {
        auto* c = jets->add_subcommand("stabilize",
                                       "multiply by norm powers until the form is definite");
        c->add_option("--form", args.form_path, "bihomogeneous form file")->required();
        c->add_option("--mode", args.mode, "psd or pd")
            ->required()
            ->check(CLI::IsMember({"psd", "pd"}));
        c->callback(set(cmd_jets_stabilize));
    }
    {
        auto* c = jets->add_subcommand("extend", "complete a short map to a proper one");
        c->add_option("--map", args.map_path, "map file")->required();
        c->add_option("--d", args.d, "target squared-norm degree")->required();
        c->callback(set(cmd_jets_extend));
    }

    auto* cat = app.add_subcommand("catalog", "named example families with checks");
    cat->require_subcommand(1);
    {
        auto* c = cat->add_subcommand("list", "list all entries");
        c->callback(set(cmd_catalog_list));
    }
    {
        auto* c = cat->add_subcommand("verify", "rebuild one entry and run its checks");
        c->add_option("id", args.id, "entry id")->required();
        c->callback(set(cmd_catalog_verify));
    }

    {
        auto* c = app.add_subcommand(
            "quadruple", "classify (n, r, d, k): family dimension k, rank r, generic degree d");
        c->add_option("--n", args.n, "source dimension")->required();
        c->add_option("--r", args.r, "rank")->required();
        c->add_option("--d", args.d, "generic degree")->required();
        c->add_option("--k", args.k, "family dimension")->required();
        c->callback(set(cmd_quadruple));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out;
    out.json = args.json;
    try {
        int code = action(args, out);
        out.flush();
        return code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
