#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballmaps/bounds.hpp"
#include "ballmaps/families.hpp"
#include "ballmaps/herm_form.hpp"
#include "ballmaps/jets.hpp"
#include "ballmaps/multi_index.hpp"
#include "ballmaps/poly.hpp"
#include "ballmaps/poly_map.hpp"
#include "ballmaps/sample.hpp"

namespace ballmaps {

inline PolyMap identity_map(int n) {
    PolyMap f(n, n);
    for (int i = 0; i < n; ++i) f.add_term(unit_index(n, i), i, CRat(1));
    return f;
}

// Coordinates z_1..z_{n-1} followed by z_n z: the minimum-rank nonlinear
// proper polynomial map for n >= 2.
inline PolyMap whitney_map(int n) {
    if (n < 2) throw std::domain_error("the coordinate-product map needs n >= 2");
    PolyMap f(n, 2 * n - 1);
    for (int i = 0; i + 1 < n; ++i) f.add_term(unit_index(n, i), i, CRat(1));
    for (int j = 0; j < n; ++j) {
        MultiIndex m = unit_index(n, n - 1);
        m[j] += 1;
        f.add_term(m, n - 1 + j, CRat(1));
    }
    return f;
}

inline FormPencil power_mix_pencil(const Rational& a, const Rational& b) {
    auto mix = [](const Rational& t) {
        return form_add(form_scale(norm_power_form(2, 2), t),
                        form_scale(norm_power_form(2, 1), 1 - t));
    };
    return make_pencil({mix(a), mix(b)});
}

// One-parameter quadratic family interpolating between (z1, z2) and
// (z1, z1 z2, z2^2); interior members have rank exactly n + 2 = 4.
inline FormPencil sharp_quadratic_pencil() {
    RealForm f1(2), f2(2);
    f1.add_term({1, 0}, rat(1));
    f1.add_term({0, 1}, rat(1));
    f2.add_term({1, 0}, rat(1));
    f2.add_term({1, 1}, rat(1));
    f2.add_term({0, 2}, rat(1));
    return make_pencil({form_from_real(f1), form_from_real(f2)});
}

inline FormPencil two_param_quadratic_pencil() {
    RealForm p(2);
    p.add_term({1, 0}, rat(1));
    p.add_term({0, 1}, rat(1));
    return pencil_extend_along(p, {{1, 0}, {0, 1}});
}

inline FormPencil five_param_cubic_pencil() {
    std::vector<MultiIndex> support{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2},
                                    {3, 0}, {2, 1}, {1, 2}, {0, 3}};
    return proper_family_on_support(2, support, {{1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1}});
}

inline FormPencil extended_invariant_pencil(int a) {
    if (a < 0) throw std::domain_error("the extension step needs a >= 0");
    InvariantMapData inv = build_invariant_map(a + 2);
    return pencil_extend_along(inv.real_form, {{2 * a + 1, 0}});
}

// Degree-one family of rank n + 1 that does not preserve the origin. The
// generators sit inside the segment so that both are proper; the true
// parameter set reaches from the unitary end to the constant end.
inline FormPencil constant_blend_pencil(int n) {
    HermForm norm = norm_power_form(n, 1);
    HermForm one = form_constant(n, rat(1));
    auto blend = [&](const Rational& t) {
        return form_add(form_scale(norm, t), form_scale(one, 1 - t));
    };
    return make_pencil({blend(rat(3, 4)), blend(rat(1, 4))});
}

// Family of completions: the base jet is a small positive multiple of the
// diagonal and each parameter perturbs one Hermitian direction of the
// lower-order block. Completion is affine in the jet, so every member is
// itself the completion of the matching jet. Each generator is required to
// be positive definite over the full monomial basis, which keeps a solid
// parameter neighborhood inside the family.
inline FormPencil jet_direction_pencil(int n, int d, int k) {
    if (d < 2) throw std::domain_error("jet directions need degree at least 2");
    std::vector<MultiIndex> lower = indices_up_to_degree(n, d - 1);
    std::vector<detail::HermDirection> dirs = detail::hermitian_directions(lower, 1);
    if (k < 0 || k > static_cast<int>(dirs.size()))
        throw std::invalid_argument("more directions than the lower-order block carries");
    std::vector<MultiIndex> full = indices_up_to_degree(n, d);
    for (Rational scale = rat(1, 10); scale > rat(1, 100000); scale /= 8) {
        std::vector<HermForm> gens;
        HermForm base(n);
        for (const auto& m : lower) base.add(m, m, CRat(scale));
        bool ok = true;
        for (int j = 0; j < k && ok; ++j) {
            HermForm A = base;
            const auto& dir = dirs[j];
            CRat step = dir.imaginary ? CRat(rat(0), scale / 8) : CRat(scale / 8);
            A.add(dir.a, dir.b, step);
            CompletedForm c = jet_complete({n, d, A});
            if (form_definiteness(c.C, full).verdict != Definiteness::PD) ok = false;
            else gens.push_back(c.C);
        }
        if (!ok) continue;
        CompletedForm c = jet_complete({n, d, base});
        if (form_definiteness(c.C, full).verdict != Definiteness::PD) continue;
        gens.push_back(c.C);
        return make_pencil(gens);
    }
    throw std::runtime_error("jet directions stayed outside the positive definite region");
}

struct CheckLine {
    std::string name;
    std::string detail;
    bool pass = false;
};

struct VerifyReport {
    std::string id;
    bool pass = true;
    std::vector<CheckLine> lines;
};

namespace detail {

class Verifier {
  public:
    explicit Verifier(std::string id) { report_.id = std::move(id); }

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        report_.lines.push_back({name, detail, ok});
        report_.pass = report_.pass && ok;
    }

    template <typename T, typename U>
    void check_eq(const std::string& name, const T& got, const U& want) {
        std::ostringstream s;
        s << "got " << got << ", want " << want;
        check(name, got == want, s.str());
    }

    template <typename E, typename F>
    void check_throws(const std::string& name, F&& body) {
        try {
            body();
            check(name, false, "no exception");
        } catch (const E& e) {
            check(name, true, e.what());
        } catch (const std::exception& e) {
            check(name, false, std::string("wrong exception: ") + e.what());
        }
    }

    VerifyReport take() { return std::move(report_); }

  private:
    VerifyReport report_;
};

inline void check_interval(Verifier& v, const FeasibleSet& fs, const Rational& lo,
                           const Rational& hi) {
    v.check("parameter interval is exact", fs.exact && fs.has_interval);
    v.check_eq("interval lower endpoint", fs.lo, lo);
    v.check_eq("interval upper endpoint", fs.hi, hi);
}

inline void check_interior_properness(Verifier& v, const FormPencil& pencil, int samples,
                                      unsigned seed) {
    std::mt19937_64 rng(seed);
    bool all = form_is_proper(eval_pencil(pencil, pencil_barycenter(pencil)));
    for (int i = 1; i < samples; ++i)
        all = all && form_is_proper(
                         eval_pencil(pencil, rational_interior_simplex_point(pencil.k, rng)));
    v.check("interior members are proper", all);
}

}  // namespace detail

struct CatalogEntry {
    std::string id;
    std::string title;
    int n = 0;
    int rank = 0;
    int degree = 0;
    int dim = 0;
    std::function<VerifyReport()> verify;
};

namespace detail {

inline VerifyReport verify_power_mix() {
    Verifier v("power-mix");
    FormPencil pencil = power_mix_pencil(rat(1), rat(0));
    check_interval(v, feasible_set(pencil), rat(0), rat(1));
    for (const Rational& t : {rat(1, 4), rat(1, 2), rat(3, 4)})
        v.check("member is proper at " + rat_str(t), form_is_proper(eval_pencil(pencil, {t})));
    v.check_eq("family rank", family_rank(pencil), 5);
    v.check_eq("family degree", family_degree(pencil), 2);
    GapCheck gap = check_family_rank_gap(pencil);
    v.check("origin-preserving rank gap", gap.holds,
            "rank " + std::to_string(gap.rank) + " >= " + std::to_string(gap.threshold));
    return v.take();
}

inline VerifyReport verify_sharp_quadratic() {
    Verifier v("sharp-quadratic");
    FormPencil pencil = sharp_quadratic_pencil();
    check_interval(v, feasible_set(pencil), rat(0), rat(1));
    for (const Rational& t : {rat(1, 4), rat(1, 2), rat(3, 4)})
        v.check("member is proper at " + rat_str(t), form_is_proper(eval_pencil(pencil, {t})));
    GapCheck gap = check_family_rank_gap(pencil);
    v.check("rank meets the positive-dimensional floor exactly",
            gap.holds && gap.rank == gap.threshold,
            "rank " + std::to_string(gap.rank) + ", floor " + std::to_string(gap.threshold));
    v.check_eq("family degree", family_degree(pencil), 2);
    BoundaryElement be = boundary_element(pencil, {rat(1)});
    v.check("rank drops on the parameter boundary", be.boundary_rank < be.interior_rank,
            std::to_string(be.interior_rank) + " -> " + std::to_string(be.boundary_rank));
    return v.take();
}

inline VerifyReport verify_jet_quadratic() {
    Verifier v("jet-quadratic");
    FormPencil pencil = jet_direction_pencil(2, 2, 4);
    v.check_eq("parameter count", pencil.k, 4);
    v.check_eq("family rank", family_rank(pencil), 5);
    v.check_eq("family degree", family_degree(pencil), 2);
    v.check("pencil is not diagonal", !pencil_is_diagonal(pencil));
    v.check_throws<std::domain_error>("monomial degree bound refuses the family",
                                      [&] { check_family_degree_bound(pencil); });
    GapCheck gap = check_family_rank_gap(pencil);
    v.check("origin-preserving rank gap", gap.holds,
            "rank " + std::to_string(gap.rank) + " >= " + std::to_string(gap.threshold));
    check_interior_properness(v, pencil, 4, 5150u);
    return v.take();
}

inline VerifyReport verify_invariant(int n) {
    Verifier v("invariant-n" + std::to_string(n));
    InvariantMapData inv = build_invariant_map(n);
    v.check_eq("degree", inv.degree, 2 * n - 3);
    v.check("hyperplane substitution equals one", real_form_is_proper_on_hyperplane(inv.real_form));
    v.check_eq("rank", form_rank(form_from_real(inv.real_form)), n);
    bool positive = true;
    for (const auto& c : inv.squared_coeffs) positive = positive && c > 0;
    v.check("interior squared coefficients are positive", positive);
    if (n == 3) {
        v.check_eq("term count", inv.real_form.terms.size(), std::size_t{3});
        v.check_eq("x^3 coefficient", inv.real_form.coeff({3, 0}), rat(1));
        v.check_eq("xy coefficient", inv.real_form.coeff({1, 1}), rat(3));
        v.check_eq("y^3 coefficient", inv.real_form.coeff({0, 3}), rat(1));
    }
    if (n == 4) {
        v.check_eq("term count", inv.real_form.terms.size(), std::size_t{4});
        v.check_eq("x^5 coefficient", inv.real_form.coeff({5, 0}), rat(1));
        v.check_eq("x^3 y coefficient", inv.real_form.coeff({3, 1}), rat(5));
        v.check_eq("x y^2 coefficient", inv.real_form.coeff({1, 2}), rat(5));
        v.check_eq("y^5 coefficient", inv.real_form.coeff({0, 5}), rat(1));
    }
    return v.take();
}

inline VerifyReport verify_whitney(int n) {
    Verifier v("whitney-n" + std::to_string(n));
    PolyMap f = whitney_map(n);
    v.check("map is proper", map_is_proper(f));
    v.check_eq("rank", form_rank(squared_norm_form(f)), 2 * n - 1);
    v.check_eq("degree", map_degree(f), 2);
    return v.take();
}

inline VerifyReport verify_extended_invariant(int a) {
    Verifier v("extended-invariant-a" + std::to_string(a));
    FormPencil pencil = extended_invariant_pencil(a);
    v.check_eq("parameter count", pencil.k, 1);
    v.check_eq("family rank", family_rank(pencil), a + 4);
    v.check_eq("family degree", family_degree(pencil), 2 * a + 2);
    check_interval(v, feasible_set(pencil), rat(0), rat(1));
    FamilyDegreeCheck db = check_family_degree_bound(pencil);
    v.check("monomial degree bound at reduced rank", db.holds,
            "degree " + std::to_string(db.degree) + " <= " + rat_str(db.bound));
    v.check_eq("bound value", db.bound, rat(2 * (a + 3) - 3));
    GapCheck gap = check_family_rank_gap(pencil);
    v.check("origin-preserving rank gap", gap.holds,
            "rank " + std::to_string(gap.rank) + " >= " + std::to_string(gap.threshold));
    v.check("midpoint member is proper", form_is_proper(eval_pencil(pencil, {rat(1, 2)})));
    return v.take();
}

inline VerifyReport verify_two_param_quadratic() {
    Verifier v("two-param-quadratic");
    FormPencil pencil = two_param_quadratic_pencil();
    v.check_eq("parameter count", pencil.k, 2);
    v.check_eq("family rank", family_rank(pencil), 5);
    v.check_eq("family degree", family_degree(pencil), 2);
    FeasibleSet fs = feasible_set(pencil);
    v.check("feasible set is an exact halfspace list",
            fs.exact && fs.kind == FeasibleKind::Halfspaces);
    // The first four halfspaces carve the unit square and the fifth is
    // implied by them, so the parameter set is exactly [0,1] x [0,1].
    std::vector<std::pair<Rational, RatVec>> want = {{rat(0), {rat(0), rat(1)}},
                                                     {rat(0), {rat(1), rat(0)}},
                                                     {rat(1), {rat(-1), rat(0)}},
                                                     {rat(1), {rat(0), rat(-1)}},
                                                     {rat(2), {rat(-1), rat(-1)}}};
    bool box = fs.halfspaces.size() == want.size();
    for (std::size_t i = 0; box && i < want.size(); ++i)
        box = fs.halfspaces[i].constant == want[i].first && fs.halfspaces[i].coeffs == want[i].second;
    v.check("parameter set is the unit square", box, "[0,1] x [0,1]");
    FamilyDegreeCheck db = check_family_degree_bound(pencil);
    v.check("monomial degree bound at reduced rank", db.holds,
            "degree " + std::to_string(db.degree) + " <= " + rat_str(db.bound));
    GapCheck gap = check_family_rank_gap(pencil);
    v.check("origin-preserving rank gap", gap.holds);
    bool grid = true;
    for (const Rational& s : {rat(1, 4), rat(1, 2), rat(3, 4)})
        for (const Rational& t : {rat(1, 4), rat(1, 2), rat(3, 4)})
            grid = grid && form_is_proper(eval_pencil(pencil, {s, t}));
    v.check("interior members are proper on a grid", grid);
    return v.take();
}

inline VerifyReport verify_five_param_cubic() {
    Verifier v("five-param-cubic");
    FormPencil pencil = five_param_cubic_pencil();
    v.check_eq("parameter count", pencil.k, 5);
    v.check_eq("family rank", family_rank(pencil), 9);
    v.check_eq("family degree", family_degree(pencil), 3);
    v.check("base member is the cubic norm power",
            pencil.generators.back() == norm_power_form(2, 3));
    FamilyDegreeCheck db = check_family_degree_bound(pencil);
    v.check("monomial degree bound at reduced rank", db.holds,
            "degree " + std::to_string(db.degree) + " <= " + rat_str(db.bound));
    GapCheck gap = check_family_rank_gap(pencil);
    v.check("origin-preserving rank gap", gap.holds);
    check_interior_properness(v, pencil, 10, 2024u);
    return v.take();
}

inline VerifyReport verify_constant_blend() {
    Verifier v("unitary-blend-n2");
    FormPencil pencil = constant_blend_pencil(2);
    v.check_eq("parameter count", pencil.k, 1);
    v.check("does not preserve the origin", !pencil_is_origin_preserving(pencil));
    v.check_eq("family rank", family_rank(pencil), 3);
    v.check_eq("family degree", family_degree(pencil), 1);
    check_interval(v, feasible_set(pencil), rat(-1, 2), rat(3, 2));
    v.check("rank sits below the origin-preserving floor", family_rank(pencil) < 2 + 2);
    for (const Rational& t : {rat(0), rat(1, 2), rat(1)})
        v.check("member is proper at " + rat_str(t), form_is_proper(eval_pencil(pencil, {t})));
    return v.take();
}

inline VerifyReport verify_spectrahedron_slice() {
    Verifier v("spectrahedron-slice");
    v.check("interior point belongs", spectrahedron_demo(rat(1, 2), rat(1, 2), CRat(0)));
    v.check("matched product boundary point belongs",
            spectrahedron_demo(rat(1, 2), rat(1, 2), CRat(rat(1, 2))));
    v.check("corner is excluded", !spectrahedron_demo(rat(1), rat(1), CRat(1)));
    v.check("large coupling is excluded",
            !spectrahedron_demo(rat(1, 10), rat(1, 10), CRat(rat(1, 2))));
    bool agreed = true;
    try {
        for (int xi = 0; xi <= 3; ++xi)
            for (int yi = 0; yi <= 3; ++yi)
                for (int zi = 0; zi <= 2; ++zi)
                    spectrahedron_demo(rat(xi, 3), rat(yi, 3), CRat(rat(zi, 4), rat(zi, 8)));
    } catch (const std::logic_error&) {
        agreed = false;
    }
    v.check("closed form agrees with the completion solver on a grid", agreed);
    return v.take();
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;
        out.push_back({"power-mix", "blend of the squared norm with its own square", 2, 5, 2, 1,
                       detail::verify_power_mix});
        out.push_back({"sharp-quadratic",
                       "quadratic family from the 2 ball meeting the minimum possible rank", 2, 4,
                       2, 1, detail::verify_sharp_quadratic});
        out.push_back({"jet-quadratic",
                       "all quadratic completions of a small jet, one parameter per direction", 2,
                       5, 2, 4, detail::verify_jet_quadratic});
        for (int n = 3; n <= 8; ++n)
            out.push_back({"invariant-n" + std::to_string(n),
                           "group-invariant monomial map of odd degree " + std::to_string(2 * n - 3),
                           2, n, 2 * n - 3, 0, [n] { return detail::verify_invariant(n); }});
        for (int n = 2; n <= 4; ++n)
            out.push_back({"whitney-n" + std::to_string(n),
                           "coordinates juxtaposed with last-variable products", n, 2 * n - 1, 2, 0,
                           [n] { return detail::verify_whitney(n); }});
        for (int a = 0; a <= 5; ++a)
            out.push_back({"extended-invariant-a" + std::to_string(a),
                           "invariant map with its top term traded against degree " +
                               std::to_string(2 * a + 2) + " products",
                           2, a + 4, 2 * a + 2, 1, [a] { return detail::verify_extended_invariant(a); }});
        out.push_back({"two-param-quadratic",
                       "all proper quadratic monomial maps with free linear coefficients", 2, 5, 2,
                       2, detail::verify_two_param_quadratic});
        out.push_back({"five-param-cubic",
                       "all proper cubic monomial maps with free lower-order coefficients", 2, 9, 3,
                       5, detail::verify_five_param_cubic});
        out.push_back({"unitary-blend-n2",
                       "blend of the identity with a constant, rank n + 1 without origin preservation",
                       2, 3, 1, 1, detail::verify_constant_blend});
        out.push_back({"spectrahedron-slice",
                       "exact membership region of the four-parameter quadratic jet family", 2, 5,
                       2, 4, detail::verify_spectrahedron_slice});
        return out;
    }();
    return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown catalog entry: " + id);
}

inline VerifyReport catalog_verify(const std::string& id) { return catalog_entry(id).verify(); }

enum class QuadrupleVerdict { VALID_BY_CONSTRUCTION, INVALID_BY_BOUND, UNKNOWN };

inline std::string quadruple_verdict_name(QuadrupleVerdict v) {
    switch (v) {
        case QuadrupleVerdict::VALID_BY_CONSTRUCTION: return "VALID_BY_CONSTRUCTION";
        case QuadrupleVerdict::INVALID_BY_BOUND: return "INVALID_BY_BOUND";
        case QuadrupleVerdict::UNKNOWN: return "UNKNOWN";
    }
    throw std::logic_error("unknown verdict");
}

struct QuadrupleReport {
    int n = 0, r = 0, d = 0, k = 0;
    QuadrupleVerdict verdict = QuadrupleVerdict::UNKNOWN;
    std::string reason;
    std::string witness;
    std::vector<std::string> notes;
};

namespace detail {

inline std::optional<long> try_jet_dimension(int n, int d) {
    if (d == 0) return 0;
    try {
        return jet_space_dimension(n, d);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

inline std::optional<long> monomial_count(int n, int e) {
    Integer c = 1;
    for (int i = 1; i <= e; ++i) c = Integer(c * (n - 1 + i) / i);
    if (!c.fits_slong_p()) return std::nullopt;
    return c.get_si();
}

struct Witness {
    FormPencil pencil;
    std::string description;
};

inline bool witness_matches(const FormPencil& pencil, int n, int r, int d, int k) {
    if (pencil.n != n || pencil.k != k) return false;
    if (family_rank(pencil) != r || family_degree(pencil) != d) return false;
    return form_is_proper(eval_pencil(pencil, pencil_barycenter(pencil)));
}

// One-variable families supported on descending powers of the squared
// modulus: the proper members form a simplex in the coefficients, so any
// k <= r - 1 of them may vary freely.
inline std::optional<Witness> univariate_witness(int r, int d, int k) {
    if (r > d + 1 || k > r - 1) return std::nullopt;
    std::vector<MultiIndex> slots;
    for (int i = 0; i < r; ++i) slots.push_back(MultiIndex{d - i});
    auto weighted = [&](int bump) {
        RealForm p(1);
        for (int i = 0; i < r; ++i) {
            Rational c = rat(1, r);
            if (bump >= 0 && i == bump) c += rat(1, 2 * r);
            if (bump >= 0 && i == r - 1) c -= rat(1, 2 * r);
            p.add_term(slots[i], c);
        }
        return form_from_real(p);
    };
    std::vector<HermForm> gens;
    for (int j = 0; j < k; ++j) gens.push_back(weighted(j));
    gens.push_back(weighted(-1));
    try {
        return Witness{make_pencil(gens),
                       "one-variable monomial family on " + std::to_string(r) + " power slots"};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// Trading step: a proper diagonal form of degree d - 1 gives families of
// degree d by letting chosen top-degree terms slide against their products
// with the squared norm, one parameter per chosen term.
inline void trading_candidates(int n, int d, int k, std::vector<Witness>& out) {
    if (d < 2 || k < 1) return;
    std::vector<std::pair<RealForm, std::string>> bases;
    {
        RealForm lin(n);
        for (int j = 0; j < n; ++j) lin.add_term(unit_index(n, j), rat(1));
        if (d - 1 == 1) bases.emplace_back(lin, "the identity map");
        else if (auto count = monomial_count(n, d - 1); count && *count <= 64)
            bases.emplace_back(poly_pow(lin, d - 1),
                               "the norm power of degree " + std::to_string(d - 1));
    }
    if (d - 1 == 2)
        bases.emplace_back(diagonal_form_to_real(squared_norm_form(whitney_map(n))),
                           "the coordinate-product quadratic map");
    if (n == 2 && d % 2 == 0 && d >= 4)
        bases.emplace_back(build_invariant_map((d - 2) / 2 + 2).real_form,
                           "the group-invariant monomial map of degree " + std::to_string(d - 1));
    for (const auto& [p, desc] : bases) {
        std::vector<MultiIndex> top;
        for (const auto& [m, c] : p.terms)
            if (m.degree() == d - 1 && c > 0) top.push_back(m);
        int t = static_cast<int>(top.size());
        if (k > t) continue;
        std::vector<std::vector<MultiIndex>> picks;
        for (int s = 0; s + k <= t; ++s)
            picks.emplace_back(top.begin() + s, top.begin() + s + k);
        if (t <= 3)
            for (int mask = 1; mask < (1 << t); ++mask) {
                if (std::popcount(static_cast<unsigned>(mask)) != k) continue;
                std::vector<MultiIndex> sel;
                for (int i = 0; i < t; ++i)
                    if (mask & (1 << i)) sel.push_back(top[i]);
                picks.push_back(sel);
            }
        for (const auto& sel : picks) {
            try {
                out.push_back({pencil_extend_along(p, sel), "top-degree trading family over " + desc});
            } catch (const std::exception&) {
            }
        }
    }
}

inline void jet_candidates(int n, int d, int k, std::vector<Witness>& out) {
    auto delta = try_jet_dimension(n, d);
    if (d < 2 || !delta || *delta > 20 || k > 16) return;
    auto lower = try_jet_dimension(n, d - 1);
    if (!lower || Integer(k) > Integer(*lower) * Integer(*lower)) return;
    try {
        out.push_back({jet_direction_pencil(n, d, k),
                       "jet completion family at source dimension " + std::to_string(n) +
                           ", degree " + std::to_string(d)});
    } catch (const std::exception&) {
    }
}

inline std::vector<Witness> witness_candidates(int n, int r, int d, int k) {
    std::vector<Witness> out;
    if (n == 1) {
        if (auto w = univariate_witness(r, d, k)) out.push_back(*w);
        return out;
    }
    auto add_form = [&](const HermForm& F, const std::string& desc) {
        try {
            out.push_back({make_pencil({F}), desc});
        } catch (const std::exception&) {
        }
    };
    if (k == 0) {
        if (d == 1) add_form(norm_power_form(n, 1), "identity map");
        if (d == 1)
            add_form(form_add(form_scale(norm_power_form(n, 1), rat(1, 2)),
                              form_constant(n, rat(1, 2))),
                     "blend of the identity with a constant");
        if (n == 2 && d % 2 == 1)
            add_form(form_from_real(build_invariant_map((d - 1) / 2 + 2).real_form),
                     "group-invariant monomial map of odd degree " + std::to_string(d));
        if (d == 2) add_form(squared_norm_form(whitney_map(n)), "coordinate-product quadratic map");
        if (auto count = monomial_count(n, d); count && *count <= r)
            add_form(norm_power_form(n, d), "norm power of degree " + std::to_string(d));
        jet_candidates(n, d, 0, out);
    } else {
        if (d == 1 && k == 1) {
            try {
                out.push_back({constant_blend_pencil(n), "blend of the identity with a constant"});
            } catch (const std::exception&) {
            }
        }
        trading_candidates(n, d, k, out);
        jet_candidates(n, d, k, out);
    }
    return out;
}

struct PadPiece {
    HermForm form;
    int rank = 0;
    std::vector<MultiIndex> support;
};

inline std::vector<PadPiece> padding_pieces(int n, int max_degree, int deficit) {
    std::vector<PadPiece> out;
    if (n == 2)
        for (int a = 1; 2 * a + 1 <= max_degree; ++a) {
            if (a + 2 > deficit) continue;
            HermForm f = form_from_real(build_invariant_map(a + 2).real_form);
            out.push_back({f, a + 2, form_support(f)});
        }
    for (int e = 1; e <= max_degree; ++e) {
        auto count = monomial_count(n, e);
        if (!count || *count > deficit) continue;
        HermForm f = norm_power_form(n, e);
        out.push_back({f, static_cast<int>(*count), form_support(f)});
    }
    out.push_back({form_constant(n, rat(1)), 1, {MultiIndex(n)}});
    std::stable_sort(out.begin(), out.end(),
                     [](const PadPiece& a, const PadPiece& b) { return a.rank > b.rank; });
    return out;
}

inline bool pick_padding(const std::vector<PadPiece>& pieces, std::size_t from, int need,
                         std::set<MultiIndex, GrlexLess>& used,
                         std::vector<const PadPiece*>& chosen) {
    if (need == 0) return true;
    for (std::size_t j = from; j < pieces.size(); ++j) {
        const PadPiece& p = pieces[j];
        if (p.rank > need) continue;
        bool overlap = false;
        for (const auto& m : p.support) overlap = overlap || used.count(m) > 0;
        if (overlap) continue;
        for (const auto& m : p.support) used.insert(m);
        chosen.push_back(&p);
        if (pick_padding(pieces, j + 1, need - p.rank, used, chosen)) return true;
        chosen.pop_back();
        for (const auto& m : p.support) used.erase(m);
    }
    return false;
}

// Juxtapose a family with fixed proper pieces supported away from it: the
// rank adds block by block and the sphere identity is preserved by the
// convex weights.
inline std::optional<Witness> pad_witness(const Witness& base, int n, int deficit, int d) {
    std::set<MultiIndex, GrlexLess> used;
    for (const auto& g : base.pencil.generators)
        for (const auto& [key, c] : g.entries) {
            used.insert(key.first);
            used.insert(key.second);
        }
    std::vector<PadPiece> pieces = padding_pieces(n, d, deficit);
    std::vector<const PadPiece*> chosen;
    if (!pick_padding(pieces, 0, deficit, used, chosen)) return std::nullopt;
    int m = static_cast<int>(chosen.size()) + 1;
    HermForm shared(n);
    for (const PadPiece* p : chosen) shared = form_add(shared, form_scale(p->form, rat(1, m)));
    std::vector<HermForm> gens;
    for (const auto& g : base.pencil.generators)
        gens.push_back(form_add(form_scale(g, rat(1, m)), shared));
    try {
        return Witness{make_pencil(gens), base.description + " juxtaposed with disjoint padding"};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::optional<Witness> quadruple_witness(int n, int r, int d, int k) {
    if (r > 128 || d > 64 || k > 64) return std::nullopt;
    std::vector<Witness> candidates = witness_candidates(n, r, d, k);
    for (const auto& c : candidates)
        if (witness_matches(c.pencil, n, r, d, k)) return c;
    for (const auto& c : candidates) {
        if (family_degree(c.pencil) != d) continue;
        int have = family_rank(c.pencil);
        if (have >= r) continue;
        auto padded = pad_witness(c, n, r - have, d);
        if (padded && witness_matches(padded->pencil, n, r, d, k)) return padded;
    }
    return std::nullopt;
}

}  // namespace detail

// Classifies the quadruple (n, r, d, k): does a k-dimensional convex family
// of proper rational maps from the n ball with generic degree d and rank r
// exist? VALID always carries a constructed and verified witness family;
// INVALID cites an impossibility that holds for rational families with no
// extra hypotheses; everything else stays UNKNOWN. Restrictions that only
// bind narrower map classes (monomial, origin-preserving) are reported as
// notes, never as verdicts.
inline QuadrupleReport quadruple_report(int n, int r, int d, int k) {
    if (n < 1 || r < 1 || d < 1 || k < 0)
        throw std::invalid_argument("quadruple needs n, r, d >= 1 and k >= 0");
    QuadrupleReport rep;
    rep.n = n;
    rep.r = r;
    rep.d = d;
    rep.k = k;
    auto invalid = [&](const std::string& why) {
        rep.verdict = QuadrupleVerdict::INVALID_BY_BOUND;
        rep.reason = why;
        return rep;
    };
    if (r < n) return invalid("rank below the source dimension leaves no proper map");
    if (k >= 1 && r <= n)
        return invalid(
            "a positive-dimensional family keeps its degree at some boundary member whose rank "
            "drops below the source dimension");
    if (n >= 2 && d >= 2 && r <= 2 * n - 2)
        return invalid("proper rational maps to targets of dimension at most 2n - 2 = " +
                       std::to_string(2 * n - 2) + " are linear");
    if (n >= 2 && k >= 1 && d >= 2 && r <= n + 1)
        return invalid(
            "a positive-dimensional family of rank at most n + 1 has a degree-preserving boundary "
            "member that is a proper self map of the ball, hence linear");
    if (n >= 2 && r >= 2) {
        Rational bound = Rational(Integer(r) * Integer(r - 1)) / Rational(2 * (2 * n - 3));
        if (rat(d) > bound)
            return invalid("the degree exceeds the rational bound r(r - 1)/(2(2n - 3)) = " +
                           rat_str(bound));
    }
    if (n >= 2 && k >= 1 && r >= 3) {
        Rational bound = Rational(Integer(r - 1) * Integer(r - 2)) / Rational(2 * (2 * n - 3));
        if (rat(d) > bound)
            return invalid(
                "a degree-preserving boundary member must obey the rational degree bound at rank "
                "r - 1, which is " +
                rat_str(bound));
    }
    if (auto delta = detail::try_jet_dimension(n, d); delta && Integer(r) > Integer(*delta) + 1)
        return invalid("rank exceeds the dimension " + std::to_string(*delta + 1) +
                       " of the space of polynomials of degree at most d");
    if (n >= 2) {
        int m = r - k;
        if (m <= 1)
            rep.notes.push_back(
                "no monomial family: eliminating the k parameters leaves no room for a "
                "nonconstant monomial map");
        else {
            Rational bound = monomial_degree_bound(n, m);
            if (rat(d) > bound)
                rep.notes.push_back(
                    "no monomial family: after eliminating the k parameters the monomial degree "
                    "bound caps the degree at " +
                    rat_str(bound));
        }
    }
    if (n >= 2 && k >= 1 && r <= n + 1)
        rep.notes.push_back(
            "no origin-preserving family: positive-dimensional origin-preserving families have "
            "rank at least n + 2");
    if (k >= 1)
        if (auto lower = detail::try_jet_dimension(n, d - 1);
            lower && Integer(k) > Integer(*lower) * Integer(*lower))
            rep.notes.push_back(
                "no origin-preserving polynomial family: the parameter count exceeds the squared "
                "lower-order coefficient dimension " +
                std::to_string(*lower * *lower));
    if (auto w = detail::quadruple_witness(n, r, d, k)) {
        rep.verdict = QuadrupleVerdict::VALID_BY_CONSTRUCTION;
        rep.reason = "constructed and verified a witness family";
        rep.witness = w->description;
    } else {
        rep.reason = "no implemented bound excludes it and no implemented constructor reaches it";
    }
    return rep;
}

}  // namespace ballmaps
