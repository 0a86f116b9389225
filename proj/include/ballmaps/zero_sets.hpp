#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ballmaps/herm_form.hpp"
#include "ballmaps/poly.hpp"
#include "ballmaps/poly_map.hpp"

namespace ballmaps {

// Homogenization of a denominator q of degree at most d - 1: with
// q = sum q_j over homogeneous parts, Hq(w, y) = sum <w, z>^{d-j} q_j(w)
// written in doubled variables w_1..w_n, y_1..y_n where y_j stands for the
// conjugate of z_j. The result is homogeneous of degree d in w and
// divisible by the pairing sum w_j y_j; both are checked.
inline CPoly homogenize_denominator(const CPoly& q, int d) {
    int n = q.nvars;
    if (n < 1) throw std::invalid_argument("denominator needs at least one variable");
    if (q.coeff(MultiIndex(n)).is_zero())
        throw std::invalid_argument("denominator must not vanish at the origin");
    if (d < q.degree() + 1)
        throw std::domain_error("homogenization degree must exceed the denominator degree");
    CPoly bracket(2 * n);
    for (int j = 0; j < n; ++j) {
        MultiIndex m(2 * n);
        m[j] = 1;
        m[n + j] = 1;
        bracket.add_term(m, CRat(1));
    }
    std::vector<CPoly> pow = {poly_one<CRat>(2 * n)};
    for (int e = 1; e <= d; ++e) pow.push_back(pow.back() * bracket);
    CPoly hq(2 * n);
    for (const auto& [m, c] : q.terms) {
        MultiIndex wm(2 * n);
        for (int j = 0; j < n; ++j) wm[j] = m[j];
        hq += poly_monomial(wm, c) * pow[d - m.degree()];
    }
    for (const auto& [m, c] : hq.terms) {
        int wdeg = 0;
        for (int j = 0; j < n; ++j) wdeg += m[j];
        if (wdeg != d) throw std::logic_error("homogenization lost homogeneity in w");
    }
    if (!poly_divisible(hq, bracket))
        throw std::logic_error("homogenized denominator is not divisible by the pairing");
    return hq;
}

namespace detail {

// True when Hq(w, a) is identically zero in w, substituting the conjugate
// coordinates of a for the y slots.
inline bool hq_vanishes_at(const CPoly& hq, int n, const std::vector<CRat>& a) {
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("candidate dimension mismatch");
    std::map<int, CRat> fixed;
    for (int j = 0; j < n; ++j) fixed[n + j] = a[j].conj();
    return poly_assign(hq, fixed).is_zero();
}

}  // namespace detail

inline bool candidate_check(const CPoly& q, int d, const std::vector<CRat>& a) {
    return detail::hq_vanishes_at(homogenize_denominator(q, d), q.nvars, a);
}

// The coefficient of w_k^d in Hq is a univariate polynomial in the
// conjugate of z_k alone, built from the pure z_k^j coefficients of q:
// u_k(t) = sum_j [q]_{j e_k} t^{d-j}. Every candidate's k-th coordinate is
// the conjugate of a root of u_k.
inline CPoly coordinate_reflection_poly(const CPoly& q, int d, int k) {
    if (k < 0 || k >= q.nvars) throw std::invalid_argument("coordinate index out of range");
    CPoly u(1);
    for (const auto& [m, c] : q.terms) {
        if (m.degree() != m[k]) continue;
        u.add_term({d - m[k]}, c);
    }
    return u;
}

namespace detail {

inline std::vector<Integer> positive_divisors(const Integer& m) {
    Integer v = Integer(abs(m));
    std::vector<Integer> out, high;
    for (Integer d = 1; d * d <= v; ++d) {
        if (v % d != 0) continue;
        out.push_back(d);
        Integer other = v / d;
        if (other != d) high.push_back(other);
    }
    out.insert(out.end(), high.rbegin(), high.rend());
    return out;
}

}  // namespace detail

struct UnivariateRoots {
    std::vector<CRat> roots;  // distinct exact roots
    CPoly remainder;          // undeflated factor; constant when complete
    bool complete = false;
};

// Exact root extraction for a univariate polynomial: the power of t at the
// origin is stripped, then rational roots are found by the rational root
// theorem and deflated until none remain. Complex coefficients and
// oversized integer data stop the extraction with an incomplete remainder,
// which keeps every reported root exact and every completeness claim sound.
inline UnivariateRoots univariate_exact_roots(const CPoly& u) {
    if (u.nvars != 1) throw std::invalid_argument("root extraction needs one variable");
    if (u.is_zero()) throw std::invalid_argument("root extraction of the zero polynomial");
    UnivariateRoots out;
    int low = u.terms.begin()->first[0];
    CPoly v(1);
    for (const auto& [m, c] : u.terms) v.add_term({m[0] - low}, c);
    if (low > 0) out.roots.push_back(CRat(0));
    const Integer size_cap("1000000000000");
    while (true) {
        if (v.degree() == 0) {
            out.complete = true;
            break;
        }
        bool real = true;
        for (const auto& [m, c] : v.terms)
            if (!c.is_real()) real = false;
        if (!real) break;
        Integer denom_lcm = 1;
        for (const auto& [m, c] : v.terms)
            denom_lcm = Integer(lcm(denom_lcm, c.re.get_den()));
        Integer content = 0;
        for (const auto& [m, c] : v.terms)
            content = Integer(gcd(content, Integer(c.re.get_num() * (denom_lcm / c.re.get_den()))));
        auto scaled = [&](const CRat& c) {
            return Integer(c.re.get_num() * (denom_lcm / c.re.get_den()) / content);
        };
        Integer a0 = scaled(v.terms.begin()->second);
        Integer lead = scaled(v.terms.rbegin()->second);
        if (Integer(abs(a0)) > size_cap || Integer(abs(lead)) > size_cap) break;
        std::vector<Integer> ps = detail::positive_divisors(a0);
        std::vector<Integer> qs = detail::positive_divisors(lead);
        if (ps.size() * qs.size() > 10000) break;
        std::set<Rational> candidates;
        for (const Integer& p : ps)
            for (const Integer& s : qs) {
                Rational c(p, s);
                c.canonicalize();
                candidates.insert(c);
                candidates.insert(Rational(-c));
            }
        bool found = false;
        for (const Rational& r : candidates) {
            if (!poly_eval(v, {CRat(r)}).is_zero()) continue;
            CPoly factor(1);
            factor.add_term({1}, CRat(1));
            factor.add_term({0}, CRat(Rational(-r)));
            while (poly_eval(v, {CRat(r)}).is_zero()) v = poly_divide(v, factor).quotient;
            out.roots.push_back(CRat(r));
            found = true;
            break;
        }
        if (!found) break;
    }
    out.remainder = v;
    return out;
}

enum class CandidateStatus { EXACT, VERIFIED_SUBSET, GENERATORS_ONLY };

inline std::string candidate_status_name(CandidateStatus s) {
    switch (s) {
        case CandidateStatus::EXACT: return "exact";
        case CandidateStatus::VERIFIED_SUBSET: return "verified-subset";
        case CandidateStatus::GENERATORS_ONLY: return "generators-only";
    }
    throw std::logic_error("unknown candidate status");
}

struct CandidateSet {
    CandidateStatus status = CandidateStatus::EXACT;
    std::vector<std::vector<CRat>> points;  // exactly verified members
    std::vector<CPoly> system;              // coefficient polynomials in the conjugate variables
    std::vector<CPoly> unresolved;          // per-coordinate univariate factors left unsplit
};

// The coefficient polynomials c_alpha(y) of Hq, one per w monomial.
inline std::vector<CPoly> hq_coefficient_system(const CPoly& hq, int n) {
    std::map<MultiIndex, CPoly, GrlexLess> by_w;
    for (const auto& [m, c] : hq.terms) {
        MultiIndex wm(n), ym(n);
        for (int j = 0; j < n; ++j) {
            wm[j] = m[j];
            ym[j] = m[n + j];
        }
        auto it = by_w.find(wm);
        if (it == by_w.end()) it = by_w.emplace(wm, CPoly(n)).first;
        it->second.add_term(ym, c);
    }
    std::vector<CPoly> out;
    for (auto& [wm, p] : by_w) out.push_back(std::move(p));
    return out;
}

// Finite candidate set for the zero locus of a reduced proper rational map
// with denominator q: the set of z for which Hq(w, z) vanishes identically
// in w. Per-coordinate root grids give a superset whenever every
// coordinate polynomial splits over the rationals; each grid point and
// each caller-proposed candidate is then verified against the full Hq
// exactly, so EXACT status certifies the complete set.
namespace detail {

// Advisory sampling check that the denominator stays away from zero on the
// closed ball; nonvanishing is the caller's responsibility, so a violation
// only warns.
inline void warn_if_denominator_vanishes(const CPoly& q, int n) {
    std::mt19937_64 rng(86028121u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    double least = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 256; ++s) {
        std::vector<std::complex<double>> z(n);
        double norm = 0;
        for (int j = 0; j < n; ++j) {
            z[j] = {gauss(rng), gauss(rng)};
            norm += std::norm(z[j]);
        }
        if (norm == 0) continue;
        double scale = (s % 2 == 0 ? 1.0 : radius(rng)) / std::sqrt(norm);
        for (auto& c : z) c *= scale;
        std::complex<double> v = 0;
        for (const auto& [m, c] : q.terms) {
            std::complex<double> t(c.re.get_d(), c.im.get_d());
            for (int j = 0; j < n; ++j)
                for (int e = 0; e < m[j]; ++e) t *= z[j];
            v += t;
        }
        least = std::min(least, std::abs(v));
    }
    if (least < 1e-6)
        std::cerr << "warning: sampled denominator values approach zero on the closed ball\n";
}

}  // namespace detail

inline CandidateSet s_of_q(const CPoly& q, int d,
                           const std::vector<std::vector<CRat>>& proposed = {},
                           long grid_cap = 4096) {
    int n = q.nvars;
    detail::warn_if_denominator_vanishes(q, n);
    CPoly hq = homogenize_denominator(q, d);
    CandidateSet out;
    bool all_split = true;
    std::vector<std::vector<CRat>> axis(n);
    for (int k = 0; k < n; ++k) {
        UnivariateRoots r = univariate_exact_roots(coordinate_reflection_poly(q, d, k));
        if (!r.complete) {
            all_split = false;
            out.unresolved.push_back(r.remainder);
        }
        for (const CRat& root : r.roots) axis[k].push_back(root.conj());
    }
    long grid_size = 1;
    bool enumerable = true;
    for (int k = 0; k < n; ++k) {
        grid_size *= static_cast<long>(axis[k].size());
        if (grid_size > grid_cap) {
            enumerable = false;
            break;
        }
    }
    std::vector<std::vector<CRat>> candidates;
    if (enumerable) {
        candidates.assign(1, {});
        for (int k = 0; k < n; ++k) {
            std::vector<std::vector<CRat>> next;
            for (const auto& prefix : candidates)
                for (const CRat& value : axis[k]) {
                    std::vector<CRat> ext = prefix;
                    ext.push_back(value);
                    next.push_back(std::move(ext));
                }
            candidates = std::move(next);
        }
    } else {
        // the origin always belongs to the candidate set
        candidates.push_back(std::vector<CRat>(n, CRat(0)));
    }
    for (const auto& a : proposed) candidates.push_back(a);
    for (const auto& a : candidates) {
        if (!detail::hq_vanishes_at(hq, n, a)) continue;
        if (std::find(out.points.begin(), out.points.end(), a) == out.points.end())
            out.points.push_back(a);
    }
    if (!enumerable)
        out.status = CandidateStatus::GENERATORS_ONLY;
    else if (!all_split)
        out.status = CandidateStatus::VERIFIED_SUBSET;
    else
        out.status = CandidateStatus::EXACT;
    if (out.status != CandidateStatus::EXACT) out.system = hq_coefficient_system(hq, n);
    return out;
}

inline int default_homogenization_degree(const CPoly& q) { return q.degree() + 1; }

namespace detail {

inline CRat herm_dot(const std::vector<CRat>& a, const std::vector<CRat>& b) {
    CRat total(0);
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i].conj();
    return total;
}

}  // namespace detail

struct MapSplit {
    PolyMap lower;  // carries the lowest-degree part, degree strictly below d
    PolyMap upper;  // vanishes to higher order, carries the top degree
};

// Splits a proper map p into an orthogonal direct sum: the target is split
// into the exact rational span of the lowest-degree coefficient vectors
// and its complement. Properness makes the lowest part orthogonal to the
// top part, which gives the degree relations checked at the end.
inline MapSplit split_lowest(const PolyMap& p) {
    if (!map_is_proper(p)) throw std::invalid_argument("split needs a proper map");
    int nu = vanishing_order(p);
    int d = map_degree(p);
    if (nu == d) throw std::domain_error("nothing to split: the map is homogeneous");
    std::vector<std::vector<CRat>> basis;
    for (const auto& [m, vec] : p.terms) {
        if (m.degree() != nu) continue;
        std::vector<CRat> v = vec;
        for (const auto& b : basis) {
            CRat coeff = detail::herm_dot(v, b) / detail::herm_dot(b, b);
            for (int i = 0; i < p.N; ++i) v[i] -= coeff * b[i];
        }
        bool nonzero = false;
        for (const CRat& c : v)
            if (!c.is_zero()) nonzero = true;
        if (nonzero) basis.push_back(std::move(v));
    }
    PolyMap low(p.n, p.N), high(p.n, p.N);
    for (const auto& [m, vec] : p.terms) {
        std::vector<CRat> proj(p.N, CRat(0));
        for (const auto& b : basis) {
            CRat coeff = detail::herm_dot(vec, b) / detail::herm_dot(b, b);
            for (int i = 0; i < p.N; ++i) proj[i] += coeff * b[i];
        }
        for (int i = 0; i < p.N; ++i) {
            low.add_term(m, i, proj[i]);
            high.add_term(m, i, vec[i] - proj[i]);
        }
    }
    if (low.is_zero() || high.is_zero()) throw std::logic_error("split produced an identically zero part");
    MapSplit out{compact(low), compact(high)};
    if (vanishing_order(out.lower) != nu || map_degree(out.lower) >= d)
        throw std::logic_error("lower split part has the wrong degree range");
    if (vanishing_order(out.upper) <= nu || map_degree(out.upper) != d)
        throw std::logic_error("upper split part has the wrong degree range");
    HermForm recombined = form_add(squared_norm_form(out.lower), squared_norm_form(out.upper));
    if (!(recombined == squared_norm_form(p)))
        throw std::logic_error("split parts do not reconstruct the squared norm");
    return out;
}

// Partial tensor step: the lower part is tensored with the coordinate map
// and rejoined with the upper part. Properness is preserved, the vanishing
// order rises by exactly one, and the degree is unchanged.
inline PolyMap e_op(const PolyMap& p) {
    MapSplit s = split_lowest(p);
    PolyMap id(p.n, p.n);
    for (int j = 0; j < p.n; ++j) id.add_term(unit_index(p.n, j), j, CRat(1));
    PolyMap e = direct_sum(tensor(s.lower, id), s.upper, rat(1), rat(1));
    if (!map_is_proper(e)) throw std::logic_error("tensor step lost properness");
    if (vanishing_order(e) != vanishing_order(p) + 1)
        throw std::logic_error("tensor step did not raise the vanishing order by one");
    if (map_degree(e) != map_degree(p)) throw std::logic_error("tensor step changed the degree");
    return e;
}

struct Homogenization {
    PolyMap h;
    int steps = 0;
};

// Iterates the partial tensor step until the map is homogeneous of its
// degree d; the squared norm of the result must be ||z||^{2d} exactly.
inline Homogenization homogenize_by_tensor(const PolyMap& p) {
    if (!map_is_proper(p)) throw std::invalid_argument("homogenization needs a proper map");
    int d = map_degree(p);
    int budget = d - vanishing_order(p);
    Homogenization out{p, 0};
    while (vanishing_order(out.h) < d) {
        if (out.steps >= budget) throw std::logic_error("homogenization exceeded its step budget");
        out.h = e_op(out.h);
        ++out.steps;
    }
    if (!(squared_norm_form(out.h) == norm_power_form(p.n, d)))
        throw std::logic_error("homogeneous map does not have the norm power form");
    return out;
}

struct ZeroSetReport {
    bool origin_maps_to_zero = false;
    bool zero_set_empty = false;  // complementary branch: p(0) != 0
    int degree = 0;
    int steps = 0;  // tensor steps in the certificate
};

// Certifies that the zero set of a proper polynomial map is empty or the
// origin alone: the homogenized map H satisfies ||H(a)||^2 = ||a||^{2d},
// and H vanishes wherever p does, so no nonzero zero can exist.
inline ZeroSetReport zero_set_theorem_check(const PolyMap& p) {
    ZeroSetReport r;
    r.degree = map_degree(p);
    r.origin_maps_to_zero = is_origin_preserving(p);
    r.zero_set_empty = !r.origin_maps_to_zero;
    r.steps = homogenize_by_tensor(p).steps;
    return r;
}

// Exact membership test for the zero set, with the theorem as a guard: a
// proper polynomial map cannot vanish at a nonzero point.
inline bool zero_set_contains(const PolyMap& p, const std::vector<CRat>& a) {
    std::vector<CRat> value = map_eval(p, a);
    bool zero = true;
    for (const CRat& c : value)
        if (!c.is_zero()) zero = false;
    if (zero) {
        for (const CRat& c : a)
            if (!c.is_zero()) throw std::logic_error("proper map vanished at a nonzero point");
    }
    return zero;
}

// Rational map f = p / q with a scalar denominator not vanishing at 0.
struct RationalMap {
    PolyMap p;
    CPoly q;
};

// Properness of p / q: the pair polynomial of ||p||^2 minus q(z) times the
// conjugate polynomial of q in the y slots must vanish on the complexified
// sphere.
inline bool rational_map_is_proper(const RationalMap& f) {
    if (f.q.nvars != f.p.n) throw std::invalid_argument("denominator variable mismatch");
    int n = f.p.n;
    CPoly pair = form_pair_poly(squared_norm_form(f.p));
    CPoly qz(2 * n), qy(2 * n);
    for (const auto& [m, c] : f.q.terms) {
        MultiIndex zm(2 * n), ym(2 * n);
        for (int j = 0; j < n; ++j) {
            zm[j] = m[j];
            ym[n + j] = m[j];
        }
        qz.add_term(zm, c);
        qy.add_term(ym, c.conj());
    }
    return poly_divisible(pair - qz * qy, sphere_pair_poly(n));
}

// Ball automorphism vanishing at a, in exact arithmetic. The component
// along a needs no square root; the complementary part is scaled by
// sqrt(1 - |a|^2), so the exact path requires that to be a perfect square.
// It always is in one variable, where the complement is empty.
inline RationalMap mobius_exact(const std::vector<CRat>& a) {
    int n = static_cast<int>(a.size());
    if (n < 1) throw std::invalid_argument("automorphism needs at least one coordinate");
    Rational norm(0);
    for (const CRat& c : a) norm += c.norm();
    if (norm >= 1) throw std::domain_error("automorphism center must lie inside the ball");
    RationalMap f;
    f.q = poly_one<CRat>(n);
    if (norm == 0) {
        f.p = PolyMap(n, n);
        for (int j = 0; j < n; ++j) f.p.add_term(unit_index(n, j), j, CRat(1));
        return f;
    }
    Rational s(0);
    bool need_complement = n > 1;
    if (need_complement && !is_perfect_square(Rational(1 - norm), &s))
        throw std::domain_error("exact automorphism needs 1 - |a|^2 to be a rational square");
    // q(z) = 1 - <z, a>
    for (int j = 0; j < n; ++j) f.q.add_term(unit_index(n, j), -a[j].conj());
    // numerator components: a_j q-free part minus projection and scaled
    // complement, all affine in z
    f.p = PolyMap(n, n);
    for (int j = 0; j < n; ++j) {
        f.p.add_term(MultiIndex(n), j, a[j]);
        for (int k = 0; k < n; ++k) {
            // P_a z = (<z, a>/|a|^2) a, Q_a z = z - P_a z
            CRat proj = a[k].conj() * a[j] * CRat(Rational(1) / norm);
            CRat coeff = -proj;
            if (need_complement) {
                CRat comp = (j == k ? CRat(1) : CRat(0)) - proj;
                coeff -= CRat(s) * comp;
            }
            if (!coeff.is_zero()) f.p.add_term(unit_index(n, k), j, coeff);
        }
    }
    std::vector<CRat> at_center = map_eval(f.p, a);
    for (const CRat& c : at_center)
        if (!c.is_zero()) throw std::logic_error("automorphism does not vanish at its center");
    if (!rational_map_is_proper(f)) throw std::logic_error("automorphism failed the sphere identity");
    return f;
}

// Tensor of automorphisms vanishing at the given points: a proper rational
// map to dimension n^k whose numerator vanishes exactly at every listed
// point. Repeats are allowed.
inline RationalMap map_with_prescribed_zeros(const std::vector<std::vector<CRat>>& points) {
    if (points.empty()) throw std::invalid_argument("need at least one point");
    RationalMap f = mobius_exact(points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
        RationalMap g = mobius_exact(points[i]);
        f.p = tensor(f.p, g.p);
        f.q = f.q * g.q;
    }
    if (!rational_map_is_proper(f)) throw std::logic_error("tensor of automorphisms lost properness");
    for (const auto& a : points) {
        std::vector<CRat> value = map_eval(f.p, a);
        for (const CRat& c : value)
            if (!c.is_zero()) throw std::logic_error("constructed map misses a required zero");
    }
    return f;
}

}  // namespace ballmaps
