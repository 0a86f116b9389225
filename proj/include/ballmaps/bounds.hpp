#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ballmaps/herm_form.hpp"
#include "ballmaps/linalg.hpp"
#include "ballmaps/poly.hpp"

namespace ballmaps {

// Degree bound formulas for proper maps from the n ball to the N ball.
enum class BoundKind {
    MonomialSharpN2,   // 2N - 3, monomial maps from the 2 ball, sharp
    MonomialGeneral,   // (4/3)(2N - 3)/(2n - 3), monomial maps, n >= 2
    MonomialLargeN,    // floor((N - 1)/(n - 1)), monomial maps, n large
    RationalGeneral,   // N(N - 1)/(2(2n - 3)), rational maps, n >= 2
};

enum class Sharpness { SHARP, NOT_SHARP, CONJECTURAL };

inline std::string sharpness_name(Sharpness s) {
    switch (s) {
        case Sharpness::SHARP: return "sharp";
        case Sharpness::NOT_SHARP: return "not-sharp";
        case Sharpness::CONJECTURAL: return "conjectural";
    }
    throw std::logic_error("unknown sharpness");
}

// Descriptor for a bound formula: its name, sharpness status, and the
// (n, N) domain it is stated for. max_n of 0 means unbounded above.
struct BoundFormula {
    BoundKind kind;
    std::string name;
    Sharpness sharpness;
    int min_n;
    int max_n;
    int min_N;
};

inline BoundFormula bound_formula(BoundKind kind) {
    switch (kind) {
        case BoundKind::MonomialSharpN2:
            return {kind, "monomial-sharp-n2", Sharpness::SHARP, 2, 2, 2};
        case BoundKind::MonomialGeneral:
            return {kind, "monomial-general", Sharpness::NOT_SHARP, 2, 0, 1};
        case BoundKind::MonomialLargeN:
            return {kind, "monomial-large-n", Sharpness::SHARP, 3, 0, 1};
        case BoundKind::RationalGeneral:
            return {kind, "rational-general", Sharpness::NOT_SHARP, 2, 0, 2};
    }
    throw std::logic_error("unknown bound kind");
}

inline std::string bound_name(BoundKind kind) { return bound_formula(kind).name; }

inline const std::vector<BoundKind>& all_bound_kinds() {
    static const std::vector<BoundKind> kinds = {
        BoundKind::MonomialSharpN2, BoundKind::MonomialGeneral, BoundKind::MonomialLargeN,
        BoundKind::RationalGeneral};
    return kinds;
}

inline BoundKind bound_kind_from_name(const std::string& name) {
    for (BoundKind kind : all_bound_kinds())
        if (bound_name(kind) == name) return kind;
    throw std::invalid_argument("unknown bound formula: " + name);
}

inline Rational bound_eval(BoundKind kind, int n, int N) {
    BoundFormula f = bound_formula(kind);
    if (n < f.min_n || (f.max_n != 0 && n > f.max_n) || N < f.min_N)
        throw std::domain_error(f.name + " is not stated for n = " + std::to_string(n) +
                                ", N = " + std::to_string(N));
    switch (kind) {
        case BoundKind::MonomialSharpN2:
            return rat(2 * N - 3);
        case BoundKind::MonomialGeneral:
            return rat(4 * (2 * N - 3), 3 * (2 * n - 3));
        case BoundKind::MonomialLargeN: {
            Integer q = Integer(N - 1) / Integer(n - 1);
            return Rational(q);
        }
        case BoundKind::RationalGeneral:
            return rat(static_cast<long>(N) * (N - 1), 2 * (2 * n - 3));
    }
    throw std::logic_error("unknown bound kind");
}

// Best implemented monomial bound for the given source dimension.
inline Rational monomial_degree_bound(int n, int N) {
    if (n == 2) return bound_eval(BoundKind::MonomialSharpN2, 2, N);
    return bound_eval(BoundKind::MonomialGeneral, n, N);
}

// Invariant group map from the 2 ball of odd degree 2n - 3: components are
// supported on z^{2n-3-2s} w^s for s = 0..n-2 together with w^{2n-3}, the
// two pure powers carry coefficient 1, and the interior squared
// coefficients are determined by the sphere identity p(x, 1-x) = 1.
struct InvariantMapData {
    int n = 0;
    int degree = 0;
    RealForm real_form;            // squared-coefficient data
    std::vector<Rational> squared_coeffs;  // u_s for s = 1..n-2
};

inline InvariantMapData build_invariant_map(int n) {
    if (n < 2) throw std::domain_error("invariant map needs n >= 2");
    int d = 2 * n - 3;
    std::vector<MultiIndex> support;
    for (int s = 0; s <= n - 2; ++s) support.push_back({d - 2 * s, s});
    support.push_back({0, d});
    int unknowns = n - 2;
    // p(x, 1-x) - 1 = 0 as a polynomial identity in x gives one linear
    // equation per power of x.
    auto restricted = [&](const MultiIndex& m) {
        RealForm p(2);
        p.add_term(m, rat(1));
        return restrict_to_hyperplane(p);
    };
    RealForm fixed = restricted(support.front()) + restricted(support.back());
    fixed.add_term(MultiIndex(2), rat(-1));
    RatMat A(d + 1, RatVec(unknowns, rat(0)));
    RatVec b(d + 1, rat(0));
    for (int s = 1; s <= n - 2; ++s) {
        RealForm r = restricted(support[s]);
        for (const auto& [m, c] : r.terms) A[m[0]][s - 1] = c;
    }
    for (const auto& [m, c] : fixed.terms) b[m[0]] = -c;
    LinearSolution sol = solve_linear(A, b);
    if (!sol.consistent || !sol.nullspace.empty())
        throw std::logic_error("invariant map coefficients are not uniquely determined");
    InvariantMapData out;
    out.n = n;
    out.degree = d;
    out.real_form = RealForm(2);
    out.real_form.add_term(support.front(), rat(1));
    out.real_form.add_term(support.back(), rat(1));
    for (int s = 1; s <= n - 2; ++s) {
        if (sol.particular[s - 1] <= 0)
            throw std::logic_error("invariant map squared coefficient not positive");
        out.squared_coeffs.push_back(sol.particular[s - 1]);
        out.real_form.add_term(support[s], sol.particular[s - 1]);
    }
    if (!real_form_is_proper_on_hyperplane(out.real_form))
        throw std::logic_error("invariant map failed the sphere identity");
    return out;
}

}  // namespace ballmaps
