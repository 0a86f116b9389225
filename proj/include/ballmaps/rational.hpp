#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballmaps {

// Exact rational scalar. mpq_class keeps values canonical: lowest terms,
// denominator positive.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q" with optional sign on p; no decimals, no spaces.
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = s.find('/');
    auto check_int = [&](const std::string& t, bool sign_ok) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!check_int(num, true) || !check_int(den, false))
        throw std::invalid_argument("bad rational literal: " + s);
    Integer n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in: " + s);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double rat_double(const Rational& r) { return r.get_d(); }

inline int rat_sign(const Rational& r) { return sgn(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Writes sqrt into *root when r is a square of a rational.
inline bool is_perfect_square(const Rational& r, Rational* root = nullptr) {
    if (r < 0) return false;
    Integer num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    if (root) {
        Integer rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        Rational q(rn, rd);
        q.canonicalize();
        *root = q;
    }
    return true;
}

namespace detail {

inline bool int_square_root(const Integer& m, Integer* root) {
    if (m < 0) return false;
    if (mpz_perfect_square_p(m.get_mpz_t()) == 0) return false;
    mpz_sqrt(root->get_mpz_t(), m.get_mpz_t());
    return true;
}

// m >= 0 as a sum of at most four integer squares, by descending search.
// Values here stay desk sized, so the search cost is acceptable.
inline std::vector<Integer> int_four_squares(const Integer& m) {
    if (m < 0) throw std::domain_error("four squares of a negative integer");
    if (m > Integer(100000000))
        throw std::domain_error("square decomposition input too large");
    std::vector<Integer> out;
    if (m == 0) return out;
    Integer r;
    if (int_square_root(m, &r)) return {r};
    Integer a;
    mpz_sqrt(a.get_mpz_t(), m.get_mpz_t());
    for (Integer x = a; x >= 1; --x) {
        if (int_square_root(m - x * x, &r)) return {x, r};
    }
    for (Integer x = a; x >= 1; --x) {
        Integer rem = m - x * x;
        Integer b;
        mpz_sqrt(b.get_mpz_t(), rem.get_mpz_t());
        for (Integer y = b; y >= 1; --y) {
            if (int_square_root(rem - y * y, &r)) return {x, y, r};
        }
    }
    for (Integer x = a; x >= 1; --x) {
        Integer rem = m - x * x;
        Integer b;
        mpz_sqrt(b.get_mpz_t(), rem.get_mpz_t());
        for (Integer y = b; y >= 1; --y) {
            Integer rem2 = rem - y * y;
            Integer c;
            mpz_sqrt(c.get_mpz_t(), rem2.get_mpz_t());
            for (Integer z = c; z >= 1; --z) {
                if (int_square_root(rem2 - z * z, &r)) return {x, y, z, r};
            }
        }
    }
    throw std::logic_error("four square decomposition failed");
}

}  // namespace detail

// w >= 0 as a sum of at most four rational squares: w = sum s_i^2.
inline std::vector<Rational> rational_square_parts(const Rational& w) {
    if (w < 0) throw std::domain_error("square decomposition of a negative weight");
    std::vector<Rational> out;
    if (w == 0) return out;
    Rational root;
    if (is_perfect_square(w, &root)) return {root};
    Integer p = w.get_num(), q = w.get_den();
    for (const Integer& s : detail::int_four_squares(p * q)) {
        Rational part(s, q);
        part.canonicalize();
        out.push_back(part);
    }
    return out;
}

// Complex number with exact rational real and imaginary parts.
struct CRat {
    Rational re, im;

    CRat() : re(0), im(0) {}
    CRat(int v) : re(v), im(0) {}
    CRat(const Rational& r) : re(r), im(0) {}
    CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    CRat conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }  // |c|^2

    CRat operator-() const { return {-re, -im}; }
    CRat& operator+=(const CRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRat& operator-=(const CRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    CRat& operator*=(const CRat& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    CRat& operator/=(const CRat& o) {
        Rational n = o.norm();
        if (n == 0) throw std::domain_error("division by complex zero");
        Rational r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = r;
        return *this;
    }
};

inline CRat operator+(CRat a, const CRat& b) { return a += b; }
inline CRat operator-(CRat a, const CRat& b) { return a -= b; }
inline CRat operator*(CRat a, const CRat& b) { return a *= b; }
inline CRat operator/(CRat a, const CRat& b) { return a /= b; }
inline bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

inline CRat crat(long re_num, long re_den = 1, long im_num = 0, long im_den = 1) {
    return {rat(re_num, re_den), rat(im_num, im_den)};
}

inline std::string crat_str(const CRat& c) {
    if (c.im == 0) return rat_str(c.re);
    return rat_str(c.re) + (c.im > 0 ? "+" : "") + rat_str(c.im) + "i";
}

}  // namespace ballmaps
