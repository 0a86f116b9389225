#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ballmaps/rational.hpp"

namespace ballmaps {

// Splits m = k^2 * r with r squarefree, by trial division. Radicands in
// this library come from small solved constants; the guard keeps an
// accidental huge input from looping for a long time.
inline std::pair<Integer, Integer> squarefree_split(Integer m) {
    if (m <= 0) throw std::domain_error("squarefree split needs a positive integer");
    if (m > Integer(1000000000000L)) throw std::domain_error("radicand too large to factor");
    Integer k = 1;
    Integer r = 1;
    Integer d = 2;
    while (d * d <= m) {
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) k *= d;
        if (e % 2) r *= d;
        ++d;
    }
    r *= m;
    return {k, r};
}

// Element of the real field generated over the rationals by square roots
// of positive integers: a finite sum of c * sqrt(r) terms. Radicands are
// kept squarefree, and square roots of distinct squarefree integers are
// linearly independent over the rationals, so comparing coordinate maps is
// an exact equality test.
struct SqrtElem {
    std::map<Integer, Rational> parts;  // squarefree radicand -> coefficient

    SqrtElem() = default;
    SqrtElem(int v) {
        if (v != 0) parts.emplace(Integer(1), rat(v));
    }
    SqrtElem(const Rational& v) {
        if (v != 0) parts.emplace(Integer(1), v);
    }

    bool is_zero() const { return parts.empty(); }
    bool is_rational() const {
        return parts.empty() || (parts.size() == 1 && parts.begin()->first == 1);
    }
    Rational rational_value() const {
        if (parts.empty()) return rat(0);
        if (!is_rational()) throw std::domain_error("square-root element is irrational");
        return parts.begin()->second;
    }

    SqrtElem& operator+=(const SqrtElem& o) {
        for (const auto& [r, c] : o.parts) add_part(r, c);
        return *this;
    }
    SqrtElem& operator-=(const SqrtElem& o) {
        for (const auto& [r, c] : o.parts) add_part(r, -c);
        return *this;
    }

    void add_part(const Integer& r, const Rational& c) {
        if (c == 0) return;
        auto it = parts.find(r);
        if (it == parts.end()) {
            parts.emplace(r, c);
        } else {
            it->second += c;
            if (it->second == 0) parts.erase(it);
        }
    }
};

inline SqrtElem operator+(SqrtElem a, const SqrtElem& b) { return a += b; }
inline SqrtElem operator-(SqrtElem a, const SqrtElem& b) { return a -= b; }
inline SqrtElem operator-(const SqrtElem& a) { return SqrtElem(0) - a; }

// sqrt(r1) * sqrt(r2) = g * sqrt((r1/g)(r2/g)) for g = gcd(r1, r2); the two
// cofactors are coprime and squarefree, so the product radicand is already
// canonical and no factoring is needed.
inline SqrtElem operator*(const SqrtElem& a, const SqrtElem& b) {
    SqrtElem out;
    for (const auto& [ra, ca] : a.parts)
        for (const auto& [rb, cb] : b.parts) {
            Integer g = Integer(gcd(ra, rb));
            out.add_part(Integer((ra / g) * (rb / g)), ca * cb * Rational(g));
        }
    return out;
}
inline SqrtElem& operator*=(SqrtElem& a, const SqrtElem& b) { return a = a * b; }

inline bool operator==(const SqrtElem& a, const SqrtElem& b) { return a.parts == b.parts; }
inline bool operator!=(const SqrtElem& a, const SqrtElem& b) { return !(a == b); }

// Exact square root of a nonnegative rational: sqrt(p/q) = sqrt(pq)/q.
inline SqrtElem sqrt_of(const Rational& u) {
    if (u < 0) throw std::domain_error("square root of a negative rational");
    if (u == 0) return SqrtElem();
    Integer p = u.get_num();
    Integer q = u.get_den();
    auto [k, r] = squarefree_split(Integer(p * q));
    SqrtElem out;
    out.parts.emplace(r, Rational(k) / Rational(q));
    return out;
}

inline double sqrt_elem_double(const SqrtElem& a) {
    double total = 0.0;
    for (const auto& [r, c] : a.parts) total += c.get_d() * std::sqrt(Integer(r).get_d());
    return total;
}

inline std::string sqrt_elem_str(const SqrtElem& a) {
    if (a.parts.empty()) return "0";
    std::string out;
    for (const auto& [r, c] : a.parts) {
        if (!out.empty()) out += " + ";
        out += rat_str(c);
        if (r != 1) out += "*sqrt(" + Integer(r).get_str() + ")";
    }
    return out;
}

// Complex number whose real and imaginary parts live in the square-root
// field. Division is only needed by rational-valued elements (polynomial
// division by a monic divisor), so general inversion is out of scope.
struct CSqrt {
    SqrtElem re, im;

    CSqrt() = default;
    CSqrt(int v) : re(v) {}
    CSqrt(const Rational& v) : re(v) {}
    CSqrt(const SqrtElem& r) : re(r) {}
    CSqrt(SqrtElem r, SqrtElem i) : re(std::move(r)), im(std::move(i)) {}
    explicit CSqrt(const CRat& c) : re(c.re), im(c.im) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    CSqrt conj() const { return CSqrt(re, -im); }

    CSqrt& operator+=(const CSqrt& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CSqrt& operator-=(const CSqrt& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
};

inline CSqrt operator+(CSqrt a, const CSqrt& b) { return a += b; }
inline CSqrt operator-(CSqrt a, const CSqrt& b) { return a -= b; }
inline CSqrt operator-(const CSqrt& a) { return CSqrt(-a.re, -a.im); }
inline CSqrt operator*(const CSqrt& a, const CSqrt& b) {
    return CSqrt(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline CSqrt& operator*=(CSqrt& a, const CSqrt& b) { return a = a * b; }
inline bool operator==(const CSqrt& a, const CSqrt& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const CSqrt& a, const CSqrt& b) { return !(a == b); }

inline CSqrt operator/(const CSqrt& a, const CSqrt& b) {
    if (!b.re.is_rational() || !b.im.is_rational())
        throw std::domain_error("division by an irrational element is not supported");
    CRat d(b.re.rational_value(), b.im.rational_value());
    if (d.is_zero()) throw std::domain_error("division by zero");
    return a * CSqrt(CRat(1) / d);
}

}  // namespace ballmaps
