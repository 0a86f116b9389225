#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ballmaps/linalg.hpp"
#include "ballmaps/poly.hpp"
#include "ballmaps/poly_map.hpp"

namespace ballmaps {

struct IndexPairLess {
    bool operator()(const std::pair<MultiIndex, MultiIndex>& a,
                    const std::pair<MultiIndex, MultiIndex>& b) const {
        if (a.first != b.first) return grlex_less(a.first, b.first);
        return grlex_less(a.second, b.second);
    }
};

// Hermitian coefficient form R(z, zbar) = sum c_{ab} z^a zbar^b. All
// nonzero entries are stored, and the Hermitian symmetry
// c_{ba} = conj(c_{ab}) is enforced on insertion. A constant term lives at
// the pair of zero indices.
struct HermForm {
    int n = 0;
    std::map<std::pair<MultiIndex, MultiIndex>, CRat, IndexPairLess> entries;

    HermForm() = default;
    explicit HermForm(int nvars) : n(nvars) {
        if (nvars < 1) throw std::invalid_argument("form needs at least one variable");
    }

    bool is_zero() const { return entries.empty(); }

    CRat entry(const MultiIndex& a, const MultiIndex& b) const {
        auto it = entries.find({a, b});
        return it == entries.end() ? CRat(0) : it->second;
    }

    // Adds c at (a, b) and conj(c) at (b, a).
    void add(const MultiIndex& a, const MultiIndex& b, const CRat& c) {
        if (a.nvars() != n || b.nvars() != n) throw std::invalid_argument("index variable mismatch");
        if (c.is_zero()) return;
        if (a == b) {
            if (!(c.im == 0)) throw std::domain_error("diagonal form entry must be real");
            bump(a, b, c);
            return;
        }
        bump(a, b, c);
        bump(b, a, c.conj());
    }

  private:
    void bump(const MultiIndex& a, const MultiIndex& b, const CRat& c) {
        auto key = std::make_pair(a, b);
        auto it = entries.find(key);
        if (it == entries.end()) {
            entries.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) entries.erase(it);
        }
    }
};

inline bool operator==(const HermForm& a, const HermForm& b) {
    return a.n == b.n && a.entries == b.entries;
}
inline bool operator!=(const HermForm& a, const HermForm& b) { return !(a == b); }

// Underlying form of the squared norm: entries are Hermitian inner
// products of the coefficient vectors of f.
inline HermForm squared_norm_form(const PolyMap& f) {
    HermForm F(f.n);
    for (const auto& [a, va] : f.terms)
        for (const auto& [b, vb] : f.terms) {
            if (grlex_less(b, a)) continue;
            CRat ip(0);
            for (int i = 0; i < f.N; ++i) ip += va[i] * vb[i].conj();
            if (a == b)
                F.add(a, a, ip);
            else
                F.add(a, b, ip);
        }
    return F;
}

inline HermForm form_scale(const HermForm& F, const Rational& s) {
    HermForm G(F.n);
    if (s == 0) return G;
    for (const auto& [k, c] : F.entries) G.entries.emplace(k, CRat(s) * c);
    return G;
}

inline HermForm form_add(const HermForm& F, const HermForm& G) {
    if (F.n != G.n) throw std::invalid_argument("adding forms over different variables");
    HermForm H = F;
    for (const auto& [k, c] : G.entries) {
        auto it = H.entries.find(k);
        if (it == H.entries.end()) {
            H.entries.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) H.entries.erase(it);
        }
    }
    return H;
}

inline HermForm form_sub(const HermForm& F, const HermForm& G) {
    return form_add(F, form_scale(G, rat(-1)));
}

inline HermForm form_constant(int n, const Rational& c) {
    HermForm F(n);
    F.add(MultiIndex(n), MultiIndex(n), CRat(c));
    return F;
}

// Row indices that actually occur, in graded lexicographic order.
inline std::vector<MultiIndex> form_support(const HermForm& F) {
    std::vector<MultiIndex> out;
    for (const auto& [k, c] : F.entries)
        if (out.empty() || out.back() != k.first) out.push_back(k.first);
    return out;
}

inline CRatMat form_matrix(const HermForm& F, const std::vector<MultiIndex>& support) {
    int m = static_cast<int>(support.size());
    CRatMat M(m, CRatVec(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M[i][j] = F.entry(support[i], support[j]);
    return M;
}

// Certificate for nonnegativity of a form as a Hermitian matrix on its
// index support. For NOT_PSD the witness names coefficients of a direction
// with a strictly negative value, verified exactly.
struct PsdCertificate {
    Definiteness verdict = Definiteness::NOT_PSD;
    std::vector<MultiIndex> support;
    std::vector<Rational> pivots;
    int rank = 0;
    std::map<MultiIndex, CRat, GrlexLess> witness;
    Rational witness_value;

    bool is_psd() const { return verdict != Definiteness::NOT_PSD; }
};

inline PsdCertificate form_definiteness(const HermForm& F, const std::vector<MultiIndex>& support) {
    PsdCertificate cert;
    cert.support = support;
    HermCertificate raw = hermitian_definiteness(form_matrix(F, cert.support));
    cert.verdict = raw.verdict;
    cert.pivots = raw.pivots;
    cert.rank = raw.rank;
    if (raw.verdict == Definiteness::NOT_PSD) {
        cert.witness_value = raw.witness_value;
        for (std::size_t i = 0; i < cert.support.size(); ++i)
            if (!raw.witness[i].is_zero()) cert.witness.emplace(cert.support[i], raw.witness[i]);
    }
    return cert;
}

inline PsdCertificate form_definiteness(const HermForm& F) {
    return form_definiteness(F, form_support(F));
}

inline bool form_is_psd(const HermForm& F) { return form_definiteness(F).is_psd(); }

// Rank of the coefficient matrix, defined for indefinite forms as well.
inline int form_rank(const HermForm& F) {
    if (F.is_zero()) return 0;
    return crat_rank(form_matrix(F, form_support(F)));
}

// The form as a polynomial in 2n independent variables, z_1..z_n followed
// by y_1..y_n with y standing in for the conjugates.
inline CPoly form_pair_poly(const HermForm& F) {
    CPoly p(2 * F.n);
    for (const auto& [k, c] : F.entries) {
        MultiIndex m(2 * F.n);
        for (int i = 0; i < F.n; ++i) {
            m[i] = k.first[i];
            m[F.n + i] = k.second[i];
        }
        p.add_term(m, c);
    }
    return p;
}

// Inverse of form_pair_poly; rejects polynomials without the Hermitian
// symmetry.
inline HermForm form_from_pair_poly(const CPoly& p, int n) {
    if (p.nvars != 2 * n) throw std::invalid_argument("pair polynomial variable mismatch");
    HermForm F(n);
    for (const auto& [m, c] : p.terms) {
        MultiIndex a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = m[i];
            b[i] = m[n + i];
        }
        F.entries[{a, b}] = c;
    }
    for (const auto& [k, c] : F.entries) {
        auto mirror = F.entries.find({k.second, k.first});
        if (mirror == F.entries.end() || !(mirror->second == c.conj()))
            throw std::domain_error("pair polynomial is not Hermitian symmetric");
        if (k.first == k.second && !(c.im == 0))
            throw std::domain_error("pair polynomial has a non-real diagonal");
    }
    return F;
}

// s(z, y) = z_1 y_1 + ... + z_n y_n - 1, the defining polynomial of the
// complexified sphere.
inline CPoly sphere_pair_poly(int n) {
    CPoly s(2 * n);
    for (int i = 0; i < n; ++i) {
        MultiIndex m(2 * n);
        m[i] = 1;
        m[n + i] = 1;
        s.add_term(m, CRat(1));
    }
    s.add_term(MultiIndex(2 * n), CRat(-1));
    return s;
}

inline bool form_is_diagonal(const HermForm& F) {
    for (const auto& [k, c] : F.entries)
        if (k.first != k.second) return false;
    return true;
}

inline RealForm diagonal_form_to_real(const HermForm& F) {
    if (!form_is_diagonal(F)) throw std::domain_error("form has off-diagonal entries");
    RealForm p(F.n);
    for (const auto& [k, c] : F.entries) p.add_term(k.first, c.re);
    return p;
}

inline HermForm form_from_real(const RealForm& p) {
    HermForm F(p.nvars);
    for (const auto& [m, c] : p.terms) F.add(m, m, CRat(c));
    return F;
}

// R(z, zbar) = 0 for every z on the unit sphere, decided by exact
// divisibility by s(z, y). Diagonal forms take the hyperplane substitution
// route; both routes agree.
inline bool form_vanishes_on_sphere(const HermForm& F) {
    if (F.is_zero()) return true;
    if (form_is_diagonal(F)) {
        RealForm p = diagonal_form_to_real(F);
        return restrict_to_hyperplane(p).is_zero();
    }
    return poly_divisible(form_pair_poly(F), sphere_pair_poly(F.n));
}

inline bool form_is_constant(const HermForm& F) {
    for (const auto& [k, c] : F.entries)
        if (!(k.first.is_zero() && k.second.is_zero())) return false;
    return true;
}

inline bool form_is_origin_preserving(const HermForm& F) {
    for (const auto& [k, c] : F.entries)
        if (k.first.is_zero() || k.second.is_zero()) return false;
    return true;
}

// A form is proper when it is the squared norm of a nonconstant map that
// carries the sphere to the sphere: nonnegative, equal to 1 on the sphere,
// and nonconstant.
inline bool form_is_proper(const HermForm& F) {
    if (form_is_constant(F)) return false;
    if (!form_is_psd(F)) return false;
    return form_vanishes_on_sphere(form_sub(F, form_constant(F.n, rat(1))));
}

inline bool map_is_proper(const PolyMap& f) { return form_is_proper(squared_norm_form(f)); }

inline bool norm_equivalent(const PolyMap& f, const PolyMap& g) {
    if (f.n != g.n) throw std::invalid_argument("maps over different domains");
    return squared_norm_form(f) == squared_norm_form(g);
}

// Exact real value R(z, conj z) at an exact complex point.
inline Rational form_value(const HermForm& F, const std::vector<CRat>& z) {
    if (static_cast<int>(z.size()) != F.n) throw std::invalid_argument("point dimension mismatch");
    CRat total(0);
    for (const auto& [k, c] : F.entries) {
        CRat v = c;
        for (int i = 0; i < F.n; ++i) {
            for (int e = 0; e < k.first[i]; ++e) v *= z[i];
            for (int e = 0; e < k.second[i]; ++e) v *= z[i].conj();
        }
        total += v;
    }
    if (!(total.im == 0)) throw std::logic_error("Hermitian form took a non-real value");
    return total.re;
}

// Diagonal form of ||z||^{2d}; entries are the multinomial coefficients.
inline HermForm norm_power_form(int n, int d) {
    RealForm sum(n);
    for (int i = 0; i < n; ++i) sum.add_term(unit_index(n, i), rat(1));
    return form_from_real(poly_pow(sum, d));
}

inline int form_map_degree(const HermForm& F) {
    int d = -1;
    for (const auto& [k, c] : F.entries)
        if (k.first == k.second && k.first.degree() > d) d = k.first.degree();
    return d;
}

}  // namespace ballmaps
