#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "ballmaps/poly.hpp"

namespace ballmaps {

// Polynomial map C^n -> C^N stored term by term: each multi-index carries
// the vector of coefficients of z^alpha across the N components. Vectors
// that are entirely zero are not stored.
struct PolyMap {
    int n = 0;
    int N = 0;
    std::map<MultiIndex, std::vector<CRat>, GrlexLess> terms;

    PolyMap() = default;
    PolyMap(int domain, int target) : n(domain), N(target) {
        if (domain < 1 || target < 1) throw std::invalid_argument("map dimensions must be positive");
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const MultiIndex& m, int component, const CRat& c) {
        if (m.nvars() != n) throw std::invalid_argument("term with wrong variable count");
        if (component < 0 || component >= N) throw std::invalid_argument("component out of range");
        if (c.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) it = terms.emplace(m, std::vector<CRat>(N)).first;
        it->second[component] += c;
        normalize_entry(it);
    }

    CRat coeff(const MultiIndex& m, int component) const {
        auto it = terms.find(m);
        return it == terms.end() ? CRat(0) : it->second[component];
    }

  private:
    void normalize_entry(std::map<MultiIndex, std::vector<CRat>, GrlexLess>::iterator it) {
        for (const CRat& c : it->second)
            if (!c.is_zero()) return;
        terms.erase(it);
    }
};

inline bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.n == b.n && a.N == b.N && a.terms == b.terms;
}

inline int map_degree(const PolyMap& f) {
    if (f.is_zero()) throw std::domain_error("degree of the zero map");
    return f.terms.rbegin()->first.degree();
}

// Order of vanishing at the origin: the lowest total degree present.
inline int vanishing_order(const PolyMap& f) {
    if (f.is_zero()) throw std::domain_error("vanishing order of the zero map");
    return f.terms.begin()->first.degree();
}

inline bool is_origin_preserving(const PolyMap& f) {
    return f.terms.find(MultiIndex(f.n)) == f.terms.end();
}

inline std::map<int, PolyMap> homogeneous_parts(const PolyMap& f) {
    std::map<int, PolyMap> parts;
    for (const auto& [m, vec] : f.terms) {
        int d = m.degree();
        auto it = parts.find(d);
        if (it == parts.end()) it = parts.emplace(d, PolyMap(f.n, f.N)).first;
        it->second.terms.emplace(m, vec);
    }
    return parts;
}

inline CPoly component_poly(const PolyMap& f, int component) {
    CPoly p(f.n);
    for (const auto& [m, vec] : f.terms)
        if (!vec[component].is_zero()) p.terms.emplace(m, vec[component]);
    return p;
}

inline PolyMap map_from_components(int nvars, const std::vector<CPoly>& comps) {
    if (comps.empty()) throw std::invalid_argument("map needs at least one component");
    PolyMap f(nvars, static_cast<int>(comps.size()));
    for (int i = 0; i < f.N; ++i) {
        if (comps[i].nvars != nvars) throw std::invalid_argument("component variable mismatch");
        for (const auto& [m, c] : comps[i].terms) f.add_term(m, i, c);
    }
    return f;
}

inline std::vector<CRat> map_eval(const PolyMap& f, const std::vector<CRat>& z) {
    if (static_cast<int>(z.size()) != f.n)
        throw std::invalid_argument("evaluation point has wrong dimension");
    std::vector<CRat> out(f.N, CRat(0));
    for (const auto& [m, vec] : f.terms) {
        CRat mono(1);
        for (int j = 0; j < f.n; ++j)
            for (int k = 0; k < m[j]; ++k) mono *= z[j];
        for (int i = 0; i < f.N; ++i) out[i] += vec[i] * mono;
    }
    return out;
}

// Drops components that are identically zero, renumbering the rest.
inline PolyMap compact(const PolyMap& f) {
    std::vector<int> keep;
    for (int i = 0; i < f.N; ++i) {
        for (const auto& [m, vec] : f.terms) {
            if (!vec[i].is_zero()) {
                keep.push_back(i);
                break;
            }
        }
    }
    if (keep.empty() || static_cast<int>(keep.size()) == f.N) return f;
    PolyMap g(f.n, static_cast<int>(keep.size()));
    for (const auto& [m, vec] : f.terms)
        for (std::size_t i = 0; i < keep.size(); ++i) g.add_term(m, static_cast<int>(i), vec[keep[i]]);
    return g;
}

// Juxtaposition with rational squared weights: the result satisfies
// ||h||^2 = wf ||f||^2 + wg ||g||^2 exactly. When a weight is a perfect
// rational square the corresponding block is a single scaled copy;
// otherwise the weight splits into at most four rational squares and the
// block is replicated once per square, enlarging the target.
inline PolyMap direct_sum(const PolyMap& f, const PolyMap& g, const Rational& wf, const Rational& wg) {
    if (f.n != g.n) throw std::invalid_argument("juxtaposition needs a common domain");
    if (wf < 0 || wg < 0) throw std::domain_error("negative juxtaposition weight");
    std::vector<Rational> sf = rational_square_parts(wf);
    std::vector<Rational> sg = rational_square_parts(wg);
    int total = static_cast<int>(sf.size()) * f.N + static_cast<int>(sg.size()) * g.N;
    if (total == 0) throw std::domain_error("juxtaposition with both weights zero");
    PolyMap h(f.n, total);
    int base = 0;
    for (const Rational& s : sf) {
        for (const auto& [m, vec] : f.terms)
            for (int i = 0; i < f.N; ++i) h.add_term(m, base + i, CRat(s) * vec[i]);
        base += f.N;
    }
    for (const Rational& s : sg) {
        for (const auto& [m, vec] : g.terms)
            for (int i = 0; i < g.N; ++i) h.add_term(m, base + i, CRat(s) * vec[i]);
        base += g.N;
    }
    return h;
}

// Tensor product: components are all pairwise products f_i * g_j, so
// ||f (x) g||^2 = ||f||^2 ||g||^2.
inline PolyMap tensor(const PolyMap& f, const PolyMap& g) {
    if (f.n != g.n) throw std::invalid_argument("tensor needs a common domain");
    PolyMap h(f.n, f.N * g.N);
    for (const auto& [ma, va] : f.terms)
        for (const auto& [mb, vb] : g.terms) {
            MultiIndex m = ma + mb;
            for (int i = 0; i < f.N; ++i) {
                if (va[i].is_zero()) continue;
                for (int j = 0; j < g.N; ++j) {
                    if (vb[j].is_zero()) continue;
                    h.add_term(m, i * g.N + j, va[i] * vb[j]);
                }
            }
        }
    return h;
}

// Composition g(V(z)); V must land in the domain of g.
inline PolyMap compose(const PolyMap& g, const PolyMap& V) {
    if (g.n != V.N) throw std::invalid_argument("composition dimension mismatch");
    std::vector<CPoly> comps(V.N);
    for (int j = 0; j < V.N; ++j) comps[j] = component_poly(V, j);
    std::vector<std::vector<CPoly>> pow_cache(V.N, {poly_one<CRat>(V.n)});
    auto power = [&](int j, int e) -> const CPoly& {
        auto& cache = pow_cache[j];
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * comps[j]);
        return cache[e];
    };
    PolyMap h(V.n, g.N);
    for (const auto& [gamma, vec] : g.terms) {
        CPoly mono = poly_one<CRat>(V.n);
        for (int j = 0; j < g.n; ++j)
            if (gamma[j] > 0) mono = mono * power(j, gamma[j]);
        for (const auto& [m, c] : mono.terms)
            for (int i = 0; i < g.N; ++i) h.add_term(m, i, c * vec[i]);
    }
    return h;
}

// A map is monomial when every component consists of a single monomial.
inline bool is_monomial_map(const PolyMap& f) {
    std::vector<int> uses(f.N, 0);
    for (const auto& [m, vec] : f.terms)
        for (int i = 0; i < f.N; ++i)
            if (!vec[i].is_zero() && ++uses[i] > 1) return false;
    return true;
}

// Diagonal coefficient data x^alpha -> ||c_alpha||^2. For a monomial map
// this determines ||f(z)||^2 = p(|z_1|^2, ..., |z_n|^2).
inline RealForm diagonal_real_form(const PolyMap& f) {
    RealForm p(f.n);
    for (const auto& [m, vec] : f.terms) {
        Rational s(0);
        for (const CRat& c : vec) s += c.norm();
        p.add_term(m, s);
    }
    return p;
}

inline RealForm real_form_of_monomial(const PolyMap& f) {
    if (!is_monomial_map(f)) throw std::domain_error("real form requested for a non-monomial map");
    return diagonal_real_form(f);
}

// Monomial map with one component per term of p, using the nonnegative
// coefficients of p as squared moduli. Each coefficient must be a perfect
// rational square for the map to be exactly representable; otherwise the
// coefficient splits into squares across extra components.
inline PolyMap monomial_map_from_real_form(const RealForm& p) {
    std::vector<std::pair<MultiIndex, Rational>> parts;
    for (const auto& [m, c] : p.terms) {
        if (c < 0) throw std::domain_error("negative coefficient in a squared norm");
        for (const Rational& s : rational_square_parts(c)) parts.emplace_back(m, s);
    }
    if (parts.empty()) throw std::domain_error("empty real form");
    PolyMap f(p.nvars, static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        f.add_term(parts[i].first, static_cast<int>(i), CRat(parts[i].second));
    return f;
}

}  // namespace ballmaps
