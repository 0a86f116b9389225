#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballmaps/bounds.hpp"
#include "ballmaps/herm_form.hpp"
#include "ballmaps/linalg.hpp"
#include "ballmaps/sample.hpp"

namespace ballmaps {

// Affine pencil of Hermitian forms: member(t) for t in Q^k is
// sum_j t_j g_j + (1 - sum_j t_j) g_{k+1}. Every generator is proper, so
// members satisfy the sphere identity for every parameter value.
struct FormPencil {
    int n = 0;
    int k = 0;
    std::vector<HermForm> generators;  // size k + 1, the last is the base
};

namespace detail {

// Real coordinates of a Hermitian form: one slot per diagonal entry and
// two per strictly ordered off-diagonal pair, over the union support.
inline std::vector<std::pair<MultiIndex, MultiIndex>> ordered_keys(
    const std::vector<HermForm>& forms) {
    std::set<std::pair<MultiIndex, MultiIndex>, IndexPairLess> keys;
    for (const auto& f : forms)
        for (const auto& [key, c] : f.entries)
            if (!grlex_less(key.second, key.first)) keys.insert(key);
    return {keys.begin(), keys.end()};
}

inline RatVec real_coordinates(
    const HermForm& f, const std::vector<std::pair<MultiIndex, MultiIndex>>& keys) {
    RatVec v;
    for (const auto& key : keys) {
        CRat c = f.entry(key.first, key.second);
        v.push_back(c.re);
        if (grlex_less(key.first, key.second)) v.push_back(c.im);
    }
    return v;
}

}  // namespace detail

inline FormPencil make_pencil(const std::vector<HermForm>& generators) {
    if (generators.empty())
        throw std::invalid_argument("a pencil needs at least one generator");
    FormPencil pencil;
    pencil.n = generators.front().n;
    pencil.k = static_cast<int>(generators.size()) - 1;
    for (const auto& g : generators) {
        if (g.n != pencil.n)
            throw std::invalid_argument("pencil generators must share the source dimension");
        if (!form_is_proper(g))
            throw std::invalid_argument("pencil generators must all be proper forms");
    }
    auto keys = detail::ordered_keys(generators);
    RatMat rows;
    for (const auto& g : generators) rows.push_back(detail::real_coordinates(g, keys));
    if (rat_rank(rows) != static_cast<int>(generators.size()))
        throw std::invalid_argument("pencil generators must be linearly independent");
    pencil.generators = generators;
    return pencil;
}

inline HermForm eval_pencil(const FormPencil& pencil, const RatVec& lambda) {
    if (static_cast<int>(lambda.size()) != pencil.k)
        throw std::invalid_argument("pencil parameter has the wrong length");
    Rational rest = rat(1);
    for (const auto& l : lambda) rest -= l;
    HermForm out = form_scale(pencil.generators.back(), rest);
    for (int j = 0; j < pencil.k; ++j)
        out = form_add(out, form_scale(pencil.generators[j], lambda[j]));
    return out;
}

inline bool pencil_is_diagonal(const FormPencil& pencil) {
    return std::all_of(pencil.generators.begin(), pencil.generators.end(),
                       [](const HermForm& g) { return form_is_diagonal(g); });
}

inline bool pencil_is_origin_preserving(const FormPencil& pencil) {
    return std::all_of(pencil.generators.begin(), pencil.generators.end(),
                       [](const HermForm& g) { return form_is_origin_preserving(g); });
}

// Parameter-space membership: the member form is a squared norm exactly
// when it is positive semidefinite.
inline PsdCertificate pencil_membership(const FormPencil& pencil, const RatVec& lambda) {
    return form_definiteness(eval_pencil(pencil, lambda));
}

inline RatVec pencil_barycenter(const FormPencil& pencil) {
    return RatVec(pencil.k, rat(1, pencil.k + 1));
}

// Closed halfspace c + a . lambda >= 0 with primitive integer data.
struct Halfspace {
    Rational constant;
    RatVec coeffs;
};

namespace detail {

inline Halfspace normalize_halfspace(Rational constant, RatVec coeffs) {
    Integer den = constant.get_den();
    for (const auto& c : coeffs) den = Integer(lcm(den, c.get_den()));
    Integer g = Integer(abs(constant.get_num() * (den / constant.get_den())));
    for (const auto& c : coeffs)
        g = Integer(gcd(g, Integer(c.get_num() * (den / c.get_den()))));
    if (g == 0) g = 1;
    Rational scale = Rational(den) / Rational(g);
    Halfspace h;
    h.constant = constant * scale;
    for (auto& c : coeffs) h.coeffs.push_back(c * scale);
    return h;
}

inline bool halfspace_less(const Halfspace& a, const Halfspace& b) {
    if (a.constant != b.constant) return a.constant < b.constant;
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(),
                                        b.coeffs.begin(), b.coeffs.end());
}

}  // namespace detail

enum class FeasibleKind {
    Halfspaces,  // diagonal pencil, exact
    Interval,    // k = 1 general pencil, bisected bracket
    Box,         // k >= 2 general pencil, per-axis bisected brackets
};

struct FeasibleSet {
    FeasibleKind kind = FeasibleKind::Halfspaces;
    int k = 0;
    bool exact = false;
    std::vector<Halfspace> halfspaces;  // Halfspaces kind
    // Interval kind, or the exact interval derived from halfspaces at k = 1.
    // [lo, hi] consists of feasible points; for bisected data lo_outer and
    // hi_outer are infeasible and bracket the true endpoints.
    Rational lo, hi, lo_outer, hi_outer;
    bool has_interval = false;
    // Box kind: per-axis feasible brackets through the barycenter.
    std::vector<std::pair<Rational, Rational>> box;
};

namespace detail {

// For a diagonal pencil each coefficient of the member form is affine in
// lambda and membership is exactly coefficientwise nonnegativity.
inline std::vector<Halfspace> diagonal_halfspaces(const FormPencil& pencil) {
    std::set<MultiIndex, GrlexLess> support;
    for (const auto& g : pencil.generators)
        for (const auto& [key, c] : g.entries) support.insert(key.first);
    const HermForm& base = pencil.generators.back();
    std::vector<Halfspace> out;
    for (const auto& m : support) {
        Rational c0 = base.entry(m, m).re;
        RatVec coeffs;
        bool constant = true;
        for (int j = 0; j < pencil.k; ++j) {
            Rational cj = pencil.generators[j].entry(m, m).re - c0;
            if (cj != 0) constant = false;
            coeffs.push_back(cj);
        }
        if (constant) {
            if (c0 < 0) throw std::logic_error("diagonal pencil has an empty parameter set");
            continue;
        }
        out.push_back(normalize_halfspace(c0, coeffs));
    }
    std::sort(out.begin(), out.end(), halfspace_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Halfspace& a, const Halfspace& b) {
                              return a.constant == b.constant && a.coeffs == b.coeffs;
                          }),
              out.end());
    return out;
}

// Largest feasible step along lambda0 + t * dir for t >= 0, and whether a
// constraint blocks the ray at all.
inline std::optional<Rational> halfspace_ray_limit(const std::vector<Halfspace>& halfspaces,
                                                   const RatVec& lambda0, const RatVec& dir) {
    std::optional<Rational> best;
    for (const auto& h : halfspaces) {
        Rational value = h.constant;
        Rational slope = rat(0);
        for (size_t j = 0; j < dir.size(); ++j) {
            value += h.coeffs[j] * lambda0[j];
            slope += h.coeffs[j] * dir[j];
        }
        if (value < 0) throw std::invalid_argument("ray base point is not feasible");
        if (slope >= 0) continue;
        Rational t = value / (-slope);
        if (!best || t < *best) best = t;
    }
    return best;
}

inline bool pencil_feasible_at(const FormPencil& pencil, const RatVec& lambda) {
    return pencil_membership(pencil, lambda).verdict != Definiteness::NOT_PSD;
}

// Bracket the feasibility endpoint along lambda0 + t * dir by doubling then
// bisecting until the bracket width drops below 2^-40. The base point must
// be feasible.
struct RayBracket {
    Rational inner;  // feasible step
    Rational outer;  // infeasible step
};

inline RayBracket bisect_ray(const FormPencil& pencil, const RatVec& lambda0,
                             const RatVec& dir) {
    auto at = [&](const Rational& t) {
        RatVec lambda = lambda0;
        for (size_t j = 0; j < lambda.size(); ++j) lambda[j] += t * dir[j];
        return pencil_feasible_at(pencil, lambda);
    };
    if (!at(rat(0))) throw std::invalid_argument("ray base point is not feasible");
    Rational inner = rat(0);
    Rational outer = rat(1);
    int guard = 0;
    while (at(outer)) {
        inner = outer;
        outer *= 2;
        if (++guard > 200)
            throw std::logic_error("parameter set appears unbounded along the ray");
    }
    Integer two40 = Integer(1) << 40;
    Rational width_target = Rational(1) / Rational(two40);
    while (outer - inner > width_target) {
        Rational mid = (inner + outer) / 2;
        if (at(mid)) inner = mid;
        else outer = mid;
    }
    return {inner, outer};
}

}  // namespace detail

inline FeasibleSet feasible_set(const FormPencil& pencil) {
    FeasibleSet out;
    out.k = pencil.k;
    RatVec bary = pencil_barycenter(pencil);
    if (pencil_is_diagonal(pencil)) {
        out.kind = FeasibleKind::Halfspaces;
        out.exact = true;
        out.halfspaces = detail::diagonal_halfspaces(pencil);
        if (pencil.k == 1) {
            auto up = detail::halfspace_ray_limit(out.halfspaces, bary, {rat(1)});
            auto down = detail::halfspace_ray_limit(out.halfspaces, bary, {rat(-1)});
            if (!up || !down)
                throw std::logic_error("diagonal pencil parameter set is not compact");
            out.lo = bary[0] - *down;
            out.hi = bary[0] + *up;
            out.lo_outer = out.lo;
            out.hi_outer = out.hi;
            out.has_interval = true;
        }
        return out;
    }
    if (pencil.k == 1) {
        out.kind = FeasibleKind::Interval;
        auto up = detail::bisect_ray(pencil, bary, {rat(1)});
        auto down = detail::bisect_ray(pencil, bary, {rat(-1)});
        out.lo = bary[0] - down.inner;
        out.lo_outer = bary[0] - down.outer;
        out.hi = bary[0] + up.inner;
        out.hi_outer = bary[0] + up.outer;
        out.has_interval = true;
        return out;
    }
    out.kind = FeasibleKind::Box;
    for (int axis = 0; axis < pencil.k; ++axis) {
        RatVec dir(pencil.k, rat(0));
        dir[axis] = rat(1);
        auto up = detail::bisect_ray(pencil, bary, dir);
        dir[axis] = rat(-1);
        auto down = detail::bisect_ray(pencil, bary, dir);
        out.box.emplace_back(bary[axis] - down.inner, bary[axis] + up.inner);
    }
    return out;
}

// Walk from the barycenter along dir to the boundary of the parameter set.
struct BoundaryElement {
    RatVec lambda;        // boundary point (exact) or last feasible point
    bool exact = false;
    Rational step, step_outer;
    int interior_rank = 0;
    int boundary_rank = 0;
};

inline BoundaryElement boundary_element(const FormPencil& pencil, const RatVec& dir) {
    if (static_cast<int>(dir.size()) != pencil.k)
        throw std::invalid_argument("direction has the wrong length");
    if (std::all_of(dir.begin(), dir.end(), [](const Rational& d) { return d == 0; }))
        throw std::invalid_argument("direction must be nonzero");
    RatVec bary = pencil_barycenter(pencil);
    BoundaryElement out;
    out.interior_rank = form_rank(eval_pencil(pencil, bary));
    if (pencil_is_diagonal(pencil)) {
        auto halfspaces = detail::diagonal_halfspaces(pencil);
        auto t = detail::halfspace_ray_limit(halfspaces, bary, dir);
        if (!t) throw std::logic_error("diagonal pencil parameter set is not compact");
        out.exact = true;
        out.step = *t;
        out.step_outer = *t;
    } else {
        auto bracket = detail::bisect_ray(pencil, bary, dir);
        out.step = bracket.inner;
        out.step_outer = bracket.outer;
    }
    out.lambda = bary;
    for (int j = 0; j < pencil.k; ++j) out.lambda[j] += out.step * dir[j];
    out.boundary_rank = form_rank(eval_pencil(pencil, out.lambda));
    if (out.exact && out.boundary_rank >= out.interior_rank)
        throw std::logic_error("rank did not drop at the exact boundary point");
    return out;
}

// Rank and degree of the family at generic parameters: the maximum over the
// barycenter and a few seeded interior samples. Both are lower
// semicontinuous in lambda, so the maximum is attained generically.
inline std::vector<RatVec> pencil_sample_points(const FormPencil& pencil, unsigned seed,
                                                int extra) {
    std::vector<RatVec> points{pencil_barycenter(pencil)};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < extra; ++i)
        points.push_back(rational_interior_simplex_point(pencil.k, rng));
    return points;
}

inline int family_rank(const FormPencil& pencil, unsigned seed = 12345) {
    int best = 0;
    for (const auto& lambda : pencil_sample_points(pencil, seed, 3))
        best = std::max(best, form_rank(eval_pencil(pencil, lambda)));
    return best;
}

inline int family_degree(const FormPencil& pencil, unsigned seed = 12345) {
    int best = 0;
    for (const auto& lambda : pencil_sample_points(pencil, seed, 3))
        best = std::max(best, form_map_degree(eval_pencil(pencil, lambda)));
    return best;
}

// Nontrivial origin-preserving families force rank at least n + 2.
struct GapCheck {
    int n = 0;
    int k = 0;
    int rank = 0;
    int threshold = 0;
    bool holds = false;
};

inline GapCheck check_family_rank_gap(const FormPencil& pencil, unsigned seed = 12345) {
    if (pencil.n < 2)
        throw std::domain_error("the rank gap needs source dimension at least 2");
    if (pencil.k < 1)
        throw std::domain_error("the rank gap needs a positive-dimensional family");
    if (!pencil_is_origin_preserving(pencil))
        throw std::domain_error("the rank gap needs origin-preserving generators");
    GapCheck out;
    out.n = pencil.n;
    out.k = pencil.k;
    out.rank = family_rank(pencil, seed);
    out.threshold = pencil.n + 2;
    out.holds = out.rank >= out.threshold;
    return out;
}

// Degree of a diagonal family is controlled by the bound at target
// dimension rank minus the parameter count.
struct FamilyDegreeCheck {
    int n = 0, k = 0, rank = 0, degree = 0;
    Rational bound;
    bool holds = false;
};

inline FamilyDegreeCheck check_family_degree_bound(const FormPencil& pencil,
                                                   unsigned seed = 12345) {
    if (!pencil_is_diagonal(pencil))
        throw std::domain_error("the family degree bound applies to diagonal pencils");
    if (pencil.n < 2)
        throw std::domain_error("the family degree bound needs source dimension at least 2");
    FamilyDegreeCheck out;
    out.n = pencil.n;
    out.k = pencil.k;
    out.rank = family_rank(pencil, seed);
    out.degree = family_degree(pencil, seed);
    out.bound = monomial_degree_bound(pencil.n, out.rank - pencil.k);
    out.holds = rat(out.degree) <= out.bound;
    return out;
}

// A positive-dimensional family of rank r and generic degree d has a
// boundary member of the same degree and rank at most r - 1, so any valid
// single-map degree bound applies at target dimension r - 1.
inline FamilyDegreeCheck check_positive_dim_degree_bound(const FormPencil& pencil,
                                                         BoundKind kind,
                                                         unsigned seed = 12345) {
    if (pencil.k < 1)
        throw std::domain_error("the boundary degree bound needs a positive-dimensional family");
    if (pencil.n < 2)
        throw std::domain_error("the boundary degree bound needs source dimension at least 2");
    FamilyDegreeCheck out;
    out.n = pencil.n;
    out.k = pencil.k;
    out.rank = family_rank(pencil, seed);
    out.degree = family_degree(pencil, seed);
    out.bound = bound_eval(kind, pencil.n, out.rank - 1);
    out.holds = rat(out.degree) <= out.bound;
    return out;
}

// Extend a proper diagonal form along chosen top-degree support monomials:
// each selected term x^h of p may independently trade its coefficient c
// between c x^h and c x^h (x_1 + ... + x_n), which preserves the sphere
// identity and adds one parameter per term.
inline FormPencil pencil_extend_along(const RealForm& p,
                                      const std::vector<MultiIndex>& picks) {
    if (!real_form_is_proper_on_hyperplane(p))
        throw std::invalid_argument("extension needs a proper diagonal form");
    if (picks.empty()) return make_pencil({form_from_real(p)});
    int d = p.degree();
    RealForm sum_vars(p.nvars);
    for (int j = 0; j < p.nvars; ++j) sum_vars.add_term(unit_index(p.nvars, j), rat(1));
    std::vector<RealForm> picked;
    RealForm rest = p;
    for (const auto& m : picks) {
        Rational c = p.coeff(m);
        if (c <= 0) throw std::invalid_argument("extension monomials must appear in the form");
        if (m.degree() != d)
            throw std::invalid_argument("extension monomials must have top degree");
        RealForm term(p.nvars);
        term.add_term(m, c);
        picked.push_back(term);
        rest -= term;
        for (const auto& [mm, cc] : rest.terms)
            if (cc < 0) throw std::invalid_argument("extension monomials must be distinct");
    }
    int k = static_cast<int>(picks.size());
    std::vector<HermForm> generators;
    for (int j = 0; j <= k; ++j) {
        RealForm g = rest;
        for (int i = 0; i < k; ++i) {
            if (j < k && i == j) g += picked[i];
            else g += picked[i] * sum_vars;
        }
        generators.push_back(form_from_real(g));
    }
    return make_pencil(generators);
}

// Family of all proper diagonal forms supported on the given monomials,
// coordinatized by the coefficients of the free monomials: for each choice
// of free coefficients the remaining coefficients are solved uniquely from
// the sphere identity. Generators sit at free coefficients 0 and e_j.
inline FormPencil proper_family_on_support(int nvars,
                                           const std::vector<MultiIndex>& support,
                                           const std::vector<MultiIndex>& free_monomials) {
    std::vector<MultiIndex> solved;
    for (const auto& m : support) {
        if (static_cast<int>(m.e.size()) != nvars)
            throw std::invalid_argument("support monomial has the wrong variable count");
        if (std::find(free_monomials.begin(), free_monomials.end(), m) == free_monomials.end())
            solved.push_back(m);
    }
    if (solved.size() + free_monomials.size() != support.size())
        throw std::invalid_argument("free monomials must be distinct members of the support");
    int k = static_cast<int>(free_monomials.size());
    auto restricted = [&](const MultiIndex& m) {
        RealForm p(nvars);
        p.add_term(m, rat(1));
        return restrict_to_hyperplane(p);
    };
    std::set<MultiIndex, GrlexLess> rows;
    for (const auto& m : support)
        for (const auto& [mm, c] : restricted(m).terms) rows.insert(mm);
    rows.insert(MultiIndex(nvars));
    std::map<MultiIndex, int, GrlexLess> row_of;
    for (const auto& m : rows) row_of.emplace(m, static_cast<int>(row_of.size()));
    RatMat A(rows.size(), RatVec(solved.size(), rat(0)));
    for (size_t j = 0; j < solved.size(); ++j)
        for (const auto& [mm, c] : restricted(solved[j]).terms) A[row_of[mm]][j] = c;
    auto solve_at = [&](const RatVec& lambda) {
        RatVec b(rows.size(), rat(0));
        b[row_of[MultiIndex(nvars)]] = rat(1);
        for (int i = 0; i < k; ++i)
            for (const auto& [mm, c] : restricted(free_monomials[i]).terms)
                b[row_of[mm]] -= lambda[i] * c;
        LinearSolution sol = solve_linear(A, b);
        if (!sol.consistent || !sol.nullspace.empty())
            throw std::invalid_argument(
                "support does not determine the solved coefficients uniquely");
        RealForm g(nvars);
        for (int i = 0; i < k; ++i) g.add_term(free_monomials[i], lambda[i]);
        for (size_t j = 0; j < solved.size(); ++j) g.add_term(solved[j], sol.particular[j]);
        return form_from_real(g);
    };
    std::vector<HermForm> generators;
    for (int j = 0; j < k; ++j) {
        RatVec lambda(k, rat(0));
        lambda[j] = rat(1);
        generators.push_back(solve_at(lambda));
    }
    generators.push_back(solve_at(RatVec(k, rat(0))));
    return make_pencil(generators);
}

}  // namespace ballmaps
