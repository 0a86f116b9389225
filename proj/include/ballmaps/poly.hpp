#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "ballmaps/multi_index.hpp"
#include "ballmaps/rational.hpp"

namespace ballmaps {

// Sparse polynomial over a commutative coefficient ring K. Only nonzero
// coefficients are stored; keys are kept in graded lexicographic order.
template <typename K>
struct Poly {
    int nvars = 0;
    std::map<MultiIndex, K, GrlexLess> terms;

    Poly() = default;
    explicit Poly(int nv) : nvars(nv) {}

    bool is_zero() const { return terms.empty(); }

    // -1 for the zero polynomial.
    int degree() const { return terms.empty() ? -1 : terms.rbegin()->first.degree(); }

    void add_term(const MultiIndex& m, const K& c) {
        if (m.nvars() != nvars) throw std::invalid_argument("term with wrong variable count");
        if (c == K(0)) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == K(0)) terms.erase(it);
        }
    }

    K coeff(const MultiIndex& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? K(0) : it->second;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, K(0) - c);
        return *this;
    }
    Poly operator-() const {
        Poly r(nvars);
        for (const auto& [m, c] : terms) r.terms.emplace(m, K(0) - c);
        return r;
    }
};

template <typename K>
Poly<K> operator+(Poly<K> a, const Poly<K>& b) {
    return a += b;
}
template <typename K>
Poly<K> operator-(Poly<K> a, const Poly<K>& b) {
    return a -= b;
}

template <typename K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("multiplying polynomials over different variables");
    Poly<K> r(a.nvars);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) r.add_term(ma + mb, ca * cb);
    return r;
}

template <typename K>
Poly<K> operator*(const K& s, const Poly<K>& p) {
    Poly<K> r(p.nvars);
    if (s == K(0)) return r;
    for (const auto& [m, c] : p.terms) {
        K sc = s * c;
        if (!(sc == K(0))) r.terms.emplace(m, sc);
    }
    return r;
}

template <typename K>
bool operator==(const Poly<K>& a, const Poly<K>& b) {
    return a.nvars == b.nvars && a.terms == b.terms;
}
template <typename K>
bool operator!=(const Poly<K>& a, const Poly<K>& b) {
    return !(a == b);
}

template <typename K>
Poly<K> poly_one(int nvars) {
    Poly<K> p(nvars);
    p.add_term(MultiIndex(nvars), K(1));
    return p;
}

template <typename K>
Poly<K> poly_monomial(const MultiIndex& m, const K& c) {
    Poly<K> p(m.nvars());
    p.add_term(m, c);
    return p;
}

template <typename K>
Poly<K> poly_pow(const Poly<K>& p, int e) {
    if (e < 0) throw std::domain_error("negative polynomial power");
    Poly<K> r = poly_one<K>(p.nvars);
    Poly<K> base = p;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = e > 1 ? base * base : base;
        e >>= 1;
    }
    return r;
}

template <typename K>
K poly_eval(const Poly<K>& p, const std::vector<K>& x) {
    if (static_cast<int>(x.size()) != p.nvars)
        throw std::invalid_argument("evaluation point has wrong dimension");
    K total(0);
    for (const auto& [m, c] : p.terms) {
        K v = c;
        for (int i = 0; i < p.nvars; ++i)
            for (int k = 0; k < m[i]; ++k) v *= x[i];
        total += v;
    }
    return total;
}

// Replaces variable var by the polynomial sub (over the same variable list).
template <typename K>
Poly<K> poly_substitute(const Poly<K>& p, int var, const Poly<K>& sub) {
    if (sub.nvars != p.nvars) throw std::invalid_argument("substitution variable mismatch");
    std::vector<Poly<K>> pow_cache = {poly_one<K>(p.nvars)};
    Poly<K> r(p.nvars);
    for (const auto& [m, c] : p.terms) {
        while (static_cast<int>(pow_cache.size()) <= m[var])
            pow_cache.push_back(pow_cache.back() * sub);
        MultiIndex rest = m;
        rest[var] = 0;
        r += poly_monomial(rest, c) * pow_cache[m[var]];
    }
    return r;
}

// Assigns constants to a subset of variables (entries set in `fixed`),
// producing a polynomial over the same variable list.
template <typename K>
Poly<K> poly_assign(const Poly<K>& p, const std::map<int, K>& fixed) {
    Poly<K> r(p.nvars);
    for (const auto& [m, c] : p.terms) {
        K v = c;
        MultiIndex rest = m;
        for (const auto& [var, val] : fixed) {
            for (int k = 0; k < m[var]; ++k) v *= val;
            rest[var] = 0;
        }
        r.add_term(rest, v);
    }
    return r;
}

template <typename K>
struct PolyDivision {
    Poly<K> quotient, remainder;
};

// Division with remainder by a single divisor; no remainder monomial is
// divisible by the leading monomial of s, which makes the remainder
// canonical and a zero remainder equivalent to ideal membership.
template <typename K>
PolyDivision<K> poly_divide(const Poly<K>& p, const Poly<K>& s) {
    if (s.is_zero()) throw std::domain_error("division by zero polynomial");
    if (s.nvars != p.nvars) throw std::invalid_argument("division variable mismatch");
    MultiIndex lead = s.terms.rbegin()->first;
    K lead_c = s.terms.rbegin()->second;
    PolyDivision<K> out{Poly<K>(p.nvars), Poly<K>(p.nvars)};
    Poly<K> rest = p;
    while (!rest.is_zero()) {
        auto it = rest.terms.rbegin();
        MultiIndex m = it->first;
        K c = it->second;
        if (divides(lead, m)) {
            K q = c / lead_c;
            MultiIndex shift = m - lead;
            out.quotient.add_term(shift, q);
            rest -= poly_monomial(shift, q) * s;
        } else {
            out.remainder.add_term(m, c);
            rest.terms.erase(std::prev(rest.terms.end()));
        }
    }
    return out;
}

template <typename K>
bool poly_divisible(const Poly<K>& p, const Poly<K>& s) {
    return poly_divide(p, s).remainder.is_zero();
}

using RealForm = Poly<Rational>;
using CPoly = Poly<CRat>;

inline CPoly cpoly_conj(const CPoly& p) {
    CPoly r(p.nvars);
    for (const auto& [m, c] : p.terms) r.terms.emplace(m, c.conj());
    return r;
}

// Value of a real-coefficient form at x = (|z_1|^2, ..., |z_n|^2).
inline Rational real_form_eval(const RealForm& p, const std::vector<Rational>& x) {
    return poly_eval(p, x);
}

// Substitutes x_last := 1 - sum of the other variables and returns the
// result, used to test identities on the affine hyperplane sum(x) = 1.
inline RealForm restrict_to_hyperplane(const RealForm& p) {
    if (p.nvars < 1) throw std::invalid_argument("hyperplane restriction needs a variable");
    RealForm sub(p.nvars);
    sub.add_term(MultiIndex(p.nvars), rat(1));
    for (int j = 0; j + 1 < p.nvars; ++j) sub.add_term(unit_index(p.nvars, j), rat(-1));
    return poly_substitute(p, p.nvars - 1, sub);
}

// True when p(x) = 1 identically on sum(x) = 1.
inline bool real_form_is_proper_on_hyperplane(const RealForm& p) {
    RealForm r = restrict_to_hyperplane(p);
    return r == poly_one<Rational>(p.nvars);
}

}  // namespace ballmaps
