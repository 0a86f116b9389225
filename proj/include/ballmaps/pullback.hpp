#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ballmaps/bounds.hpp"
#include "ballmaps/poly_map.hpp"
#include "ballmaps/sqrt_field.hpp"

namespace ballmaps {

using SPoly = Poly<CSqrt>;

// Polynomial map whose coefficients live in the square-root field. The
// group-invariant map has irrational components with rational squares, so
// compositions with it need this wider coefficient ring.
struct SqrtMap {
    int n = 0, N = 0;
    std::vector<SPoly> components;
};

inline int sqrt_map_degree(const SqrtMap& f) {
    int d = -1;
    for (const SPoly& p : f.components) d = std::max(d, p.degree());
    return d;
}

// The group-invariant map realized exactly: component s is
// sqrt(u_s) z^(d-2s) w^s with the solved squared coefficients u_s.
inline SqrtMap invariant_sqrt_map(int n) {
    InvariantMapData data = build_invariant_map(n);
    SqrtMap f;
    f.n = 2;
    f.N = n;
    int d = data.degree;
    auto push = [&](const MultiIndex& m, const SqrtElem& c) {
        SPoly p(2);
        p.add_term(m, CSqrt(c));
        f.components.push_back(p);
    };
    push({d, 0}, SqrtElem(1));
    for (int s = 1; s <= n - 2; ++s) push({d - 2 * s, s}, sqrt_of(data.squared_coeffs[s - 1]));
    push({0, d}, SqrtElem(1));
    return f;
}

// Primitive Pythagorean pairs (cos, sin) used to build rational rotations.
inline std::pair<Rational, Rational> pythagorean_pair(int i) {
    static const int table[][3] = {{3, 4, 5},    {5, 12, 13},  {8, 15, 17},  {7, 24, 25},
                                   {20, 21, 29}, {9, 40, 41},  {12, 35, 37}, {11, 60, 61},
                                   {28, 45, 53}, {16, 63, 65}};
    const int count = static_cast<int>(sizeof(table) / sizeof(table[0]));
    const int* row = table[((i % count) + count) % count];
    return {rat(row[0], row[2]), rat(row[1], row[2])};
}

// Product of Givens rotations in the planes (j, j+1); the first column is a
// product of sines and cosines in every entry, hence has no zeros. The
// variant index shifts which Pythagorean pairs are used, giving fresh
// matrices for retries.
inline RatMat rational_orthogonal(int n, int variant = 0) {
    if (n < 1) throw std::domain_error("orthogonal matrix needs n >= 1");
    RatMat u(n, RatVec(n, rat(0)));
    for (int i = 0; i < n; ++i) u[i][i] = rat(1);
    for (int j = 0; j + 1 < n; ++j) {
        auto [c, s] = pythagorean_pair(variant + j);
        for (int col = 0; col < n; ++col) {
            Rational a = u[j][col], b = u[j + 1][col];
            u[j][col] = c * a - s * b;
            u[j + 1][col] = s * a + c * b;
        }
    }
    return u;
}

inline bool rational_matrix_is_orthogonal(const RatMat& u) {
    int n = static_cast<int>(u.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational dot(0);
            for (int k = 0; k < n; ++k) dot += u[k][i] * u[k][j];
            if (dot != (i == j ? rat(1) : rat(0))) return false;
        }
    return true;
}

inline SqrtMap apply_orthogonal(const RatMat& u, const SqrtMap& f) {
    if (static_cast<int>(u.size()) != f.N)
        throw std::invalid_argument("orthogonal matrix size does not match the map");
    SqrtMap out;
    out.n = f.n;
    out.N = f.N;
    for (int i = 0; i < f.N; ++i) {
        SPoly row(f.n);
        for (int j = 0; j < f.N; ++j) {
            if (u[i][j] == 0) continue;
            row += CSqrt(u[i][j]) * f.components[j];
        }
        out.components.push_back(row);
    }
    return out;
}

inline SqrtMap compose_with_sqrt_map(const PolyMap& g, const SqrtMap& inner) {
    if (g.n != inner.N) throw std::invalid_argument("composition dimension mismatch");
    SqrtMap out;
    out.n = inner.n;
    out.N = g.N;
    out.components.assign(g.N, SPoly(inner.n));
    for (const auto& [m, coeffs] : g.terms) {
        SPoly mono = poly_one<CSqrt>(inner.n);
        for (int j = 0; j < g.n; ++j)
            if (m[j] > 0) mono = mono * poly_pow(inner.components[j], m[j]);
        for (int i = 0; i < g.N; ++i) {
            if (coeffs[i].is_zero()) continue;
            out.components[i] += CSqrt(coeffs[i]) * mono;
        }
    }
    return out;
}

// Squared norm as a polynomial in doubled variables: the first n slots are
// the source variables and the last n their conjugates.
inline SPoly sqrt_map_pair_form(const SqrtMap& f) {
    int nv = 2 * f.n;
    SPoly total(nv);
    for (const SPoly& p : f.components) {
        SPoly left(nv), right(nv);
        for (const auto& [m, c] : p.terms) {
            MultiIndex lm(nv), rm(nv);
            for (int j = 0; j < f.n; ++j) {
                lm[j] = m[j];
                rm[f.n + j] = m[j];
            }
            left.add_term(lm, c);
            right.add_term(rm, c.conj());
        }
        total += left * right;
    }
    return total;
}

// The squared norm equals 1 on the sphere exactly when the pair polynomial
// minus 1 is divisible by sum z_j y_j - 1.
inline bool sqrt_map_is_proper(const SqrtMap& f) {
    SPoly p = sqrt_map_pair_form(f);
    p -= poly_one<CSqrt>(2 * f.n);
    SPoly s(2 * f.n);
    for (int j = 0; j < f.n; ++j) {
        MultiIndex m(2 * f.n);
        m[j] = 1;
        m[f.n + j] = 1;
        s.add_term(m, CSqrt(1));
    }
    s.add_term(MultiIndex(2 * f.n), CSqrt(-1));
    return poly_divisible(p, s);
}

struct PullbackResult {
    int source_dim = 0;       // ball dimension of g
    int g_degree = 0;
    int expected_degree = 0;  // (2n - 3) * deg g
    int composed_degree = 0;
    int attempts = 0;
    bool proper = false;
    RatMat orthogonal;
    SqrtMap composed;
};

// Composes a proper map g from the n ball with a rotated copy of the
// group-invariant map from the 2 ball and reports the composed degree,
// which must be (2n - 3) deg g. A rotation whose first column has no zeros
// already rules out top-degree cancellation for monomial g; for general g
// a fresh rotation is tried whenever cancellation is detected.
inline PullbackResult pullback(const PolyMap& g, int max_attempts = 5) {
    if (g.n < 2) throw std::domain_error("pullback needs a map from the n >= 2 ball");
    if (!map_is_proper(g)) throw std::invalid_argument("pullback needs a proper map");
    int d = map_degree(g);
    if (d < 1) throw std::invalid_argument("pullback needs a nonconstant map");
    SqrtMap v = invariant_sqrt_map(g.n);
    PullbackResult out;
    out.source_dim = g.n;
    out.g_degree = d;
    out.expected_degree = (2 * g.n - 3) * d;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        RatMat u = rational_orthogonal(g.n, attempt);
        SqrtMap composed = compose_with_sqrt_map(g, apply_orthogonal(u, v));
        int got = sqrt_map_degree(composed);
        if (got > out.expected_degree)
            throw std::logic_error("composed degree exceeds the product of degrees");
        out.attempts = attempt + 1;
        if (got == out.expected_degree) {
            out.composed_degree = got;
            out.orthogonal = std::move(u);
            out.composed = std::move(composed);
            out.proper = sqrt_map_is_proper(out.composed);
            if (!out.proper) throw std::logic_error("composition with the invariant map lost properness");
            return out;
        }
    }
    throw std::runtime_error("pullback degree cancellation persisted across rotation retries");
}

// Diagonal-form entry point: the form is realized as a monomial map with
// the same squared norm, then pulled back.
inline PullbackResult pullback(const HermForm& g, int max_attempts = 5) {
    if (!form_is_diagonal(g)) throw std::invalid_argument("pullback of a form needs a diagonal form");
    return pullback(monomial_map_from_real_form(diagonal_form_to_real(g)), max_attempts);
}

}  // namespace ballmaps
