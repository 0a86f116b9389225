#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "ballmaps/herm_form.hpp"
#include "ballmaps/multi_index.hpp"
#include "ballmaps/poly.hpp"
#include "ballmaps/poly_map.hpp"
#include "ballmaps/rational.hpp"

namespace ballmaps {

// Floating-point layer: map extraction and ball automorphisms need square
// roots, so they trade exactness for explicit tolerances. Nothing here
// feeds back into the exact layer.

using CDouble = std::complex<double>;

inline double to_double(const Rational& r) { return r.get_d(); }
inline CDouble to_cdouble(const CRat& c) { return {c.re.get_d(), c.im.get_d()}; }

struct ApproxPoly {
    int n = 0;
    std::map<MultiIndex, CDouble, GrlexLess> terms;
};

struct ApproxMap {
    int n = 0;
    int N = 0;
    std::vector<ApproxPoly> components;
};

struct ApproxRationalMap {
    ApproxMap p;
    ApproxPoly q;
};

inline ApproxPoly approx_from_exact(const CPoly& p) {
    ApproxPoly out;
    out.n = p.nvars;
    for (const auto& [m, c] : p.terms) out.terms.emplace(m, to_cdouble(c));
    return out;
}

inline CDouble approx_eval(const ApproxPoly& p, const std::vector<CDouble>& z) {
    if (static_cast<int>(z.size()) != p.n) throw std::invalid_argument("point dimension mismatch");
    CDouble total = 0;
    for (const auto& [m, c] : p.terms) {
        CDouble v = c;
        for (int i = 0; i < p.n; ++i)
            for (int e = 0; e < m[i]; ++e) v *= z[i];
        total += v;
    }
    return total;
}

inline std::vector<CDouble> approx_map_eval(const ApproxMap& f, const std::vector<CDouble>& z) {
    std::vector<CDouble> out;
    out.reserve(f.components.size());
    for (const auto& comp : f.components) out.push_back(approx_eval(comp, z));
    return out;
}

inline ApproxPoly approx_mul(const ApproxPoly& a, const ApproxPoly& b) {
    if (a.n != b.n) throw std::invalid_argument("variable count mismatch");
    ApproxPoly out;
    out.n = a.n;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            MultiIndex m(a.n);
            for (int i = 0; i < a.n; ++i) m[i] = ma[i] + mb[i];
            out.terms[m] += ca * cb;
        }
    return out;
}

inline std::vector<CDouble> random_sphere_point(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CDouble> z(n);
    double norm = 0;
    do {
        norm = 0;
        for (int j = 0; j < n; ++j) {
            z[j] = {gauss(rng), gauss(rng)};
            norm += std::norm(z[j]);
        }
    } while (norm == 0);
    double scale = 1.0 / std::sqrt(norm);
    for (auto& c : z) c *= scale;
    return z;
}

// Extracts an approximate holomorphic map whose squared norm reproduces a
// PSD form: pivoted Cholesky of the coefficient matrix, with the column
// count pinned to the exact rank so rank(g) = rank(F). The reconstruction
// is verified against the requested tolerance.
inline ApproxMap gram_map_numeric(const HermForm& F, double tol = 1e-9) {
    PsdCertificate cert = form_definiteness(F);
    if (!cert.is_psd()) throw std::domain_error("form is not positive semidefinite");
    std::vector<MultiIndex> support = cert.support;
    int m = static_cast<int>(support.size());
    int r = F.is_zero() ? 0 : form_rank(F);
    std::vector<std::vector<CDouble>> M(m, std::vector<CDouble>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M[i][j] = to_cdouble(F.entry(support[i], support[j]));
    std::vector<std::vector<CDouble>> L(m, std::vector<CDouble>(r, CDouble(0)));
    std::vector<double> diag(m);
    std::vector<bool> used(m, false);
    for (int i = 0; i < m; ++i) diag[i] = M[i][i].real();
    for (int k = 0; k < r; ++k) {
        int pivot = -1;
        for (int i = 0; i < m; ++i)
            if (!used[i] && (pivot < 0 || diag[i] > diag[pivot])) pivot = i;
        if (pivot < 0 || diag[pivot] <= 0)
            throw std::runtime_error("numeric rank collapsed below the exact rank");
        used[pivot] = true;
        double s = std::sqrt(diag[pivot]);
        L[pivot][k] = s;
        for (int j = 0; j < m; ++j) {
            if (used[j]) continue;
            CDouble v = M[j][pivot];
            for (int t = 0; t < k; ++t) v -= L[j][t] * std::conj(L[pivot][t]);
            v /= s;
            L[j][k] = v;
            diag[j] -= std::norm(v);
        }
    }
    ApproxMap g;
    g.n = F.n;
    g.N = r;
    g.components.assign(r, ApproxPoly{F.n, {}});
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < m; ++i)
            if (L[i][k] != CDouble(0)) g.components[k].terms.emplace(support[i], L[i][k]);
    double err = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            CDouble rec = 0;
            for (int k = 0; k < r; ++k) rec += L[i][k] * std::conj(L[j][k]);
            err = std::max(err, std::abs(rec - M[i][j]));
        }
    if (err > tol) throw std::runtime_error("map extraction missed the reconstruction tolerance");
    return g;
}

// All complex roots of a univariate polynomial with coefficients in
// ascending degree order, by simultaneous (Weierstrass) iteration.
inline std::vector<CDouble> durand_kerner(std::vector<CDouble> coeffs) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0) coeffs.pop_back();
    if (coeffs.size() < 2) return {};
    int deg = static_cast<int>(coeffs.size()) - 1;
    for (auto& c : coeffs) c /= coeffs[deg];
    auto value = [&](CDouble x) {
        CDouble v = 0;
        for (int i = deg; i >= 0; --i) v = v * x + coeffs[i];
        return v;
    };
    std::vector<CDouble> roots(deg);
    CDouble seed(0.4, 0.9), acc = 1;
    for (int i = 0; i < deg; ++i) {
        acc *= seed;
        roots[i] = acc;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (int i = 0; i < deg; ++i) {
            CDouble denom = 1;
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            CDouble step = value(roots[i]) / denom;
            roots[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-14) break;
    }
    return roots;
}

namespace detail {

inline void verify_unimodular_on_sphere(const ApproxRationalMap& f, double tol, unsigned seed) {
    std::mt19937_64 rng(seed);
    for (int s = 0; s < 50; ++s) {
        std::vector<CDouble> z = random_sphere_point(f.p.n, rng);
        double num = 0;
        for (const CDouble& v : approx_map_eval(f.p, z)) num += std::norm(v);
        double den = std::norm(approx_eval(f.q, z));
        if (std::abs(num / den - 1.0) > tol)
            throw std::logic_error("map is not unimodular on the sphere to tolerance");
    }
}

}  // namespace detail

// Ball automorphism centered at an interior point, in floating point; the
// radical sqrt(1 - |a|^2) is the only non-rational ingredient. The result
// is verified to vanish at the center and to be unimodular on 50 sampled
// sphere points.
inline ApproxRationalMap mobius_numeric(const std::vector<CRat>& a) {
    int n = static_cast<int>(a.size());
    if (n < 1) throw std::invalid_argument("center needs at least one coordinate");
    Rational na(0);
    for (const CRat& c : a) na += c.norm();
    if (!(na < 1)) throw std::invalid_argument("center must lie inside the open ball");
    ApproxRationalMap f;
    f.q.n = n;
    f.q.terms.emplace(MultiIndex(n), CDouble(1));
    f.p.n = n;
    f.p.N = n;
    f.p.components.assign(n, ApproxPoly{n, {}});
    bool zero = true;
    for (const CRat& c : a) zero = zero && c.is_zero();
    if (zero) {
        for (int j = 0; j < n; ++j) f.p.components[j].terms.emplace(unit_index(n, j), CDouble(1));
        return f;
    }
    for (int k = 0; k < n; ++k) {
        CDouble c = -to_cdouble(a[k].conj());
        if (c != CDouble(0)) f.q.terms.emplace(unit_index(n, k), c);
    }
    double nad = to_double(na);
    double s = std::sqrt(1.0 - nad);
    for (int j = 0; j < n; ++j) {
        CDouble aj = to_cdouble(a[j]);
        if (aj != CDouble(0)) f.p.components[j].terms.emplace(MultiIndex(n), aj);
        for (int k = 0; k < n; ++k) {
            CDouble proj = std::conj(to_cdouble(a[k])) * aj / nad;
            CDouble coeff = -proj - s * (CDouble(j == k ? 1 : 0) - proj);
            if (coeff != CDouble(0)) f.p.components[j].terms.emplace(unit_index(n, k), coeff);
        }
    }
    std::vector<CDouble> center(n);
    for (int j = 0; j < n; ++j) center[j] = to_cdouble(a[j]);
    for (const CDouble& v : approx_map_eval(f.p, center))
        if (std::abs(v) > 1e-9) throw std::logic_error("automorphism does not vanish at its center");
    detail::verify_unimodular_on_sphere(f, 1e-9, 48271u);
    return f;
}

// Tensor product of the ball automorphisms at the given interior points:
// a rational map with zero set exactly those points and target dimension
// n^k. Verified at the centers and on 50 sampled sphere points.
inline ApproxRationalMap map_with_prescribed_zeros_numeric(
    const std::vector<std::vector<CRat>>& points) {
    if (points.empty()) throw std::invalid_argument("need at least one prescribed zero");
    int n = static_cast<int>(points[0].size());
    ApproxRationalMap f = mobius_numeric(points[0]);
    for (std::size_t j = 1; j < points.size(); ++j) {
        if (static_cast<int>(points[j].size()) != n)
            throw std::invalid_argument("prescribed zeros live in different dimensions");
        ApproxRationalMap g = mobius_numeric(points[j]);
        ApproxMap prod;
        prod.n = n;
        for (const auto& fc : f.p.components)
            for (const auto& gc : g.p.components) prod.components.push_back(approx_mul(fc, gc));
        prod.N = static_cast<int>(prod.components.size());
        f.p = prod;
        f.q = approx_mul(f.q, g.q);
    }
    long long expected = 1;
    for (std::size_t j = 0; j < points.size(); ++j) expected *= n;
    if (f.p.N != expected) throw std::logic_error("target dimension is not n^k");
    for (const auto& a : points) {
        std::vector<CDouble> z(n);
        for (int j = 0; j < n; ++j) z[j] = to_cdouble(a[j]);
        for (const CDouble& v : approx_map_eval(f.p, z))
            if (std::abs(v) > 1e-9)
                throw std::logic_error("map does not vanish at a prescribed zero");
    }
    detail::verify_unimodular_on_sphere(f, 1e-9, 69621u);
    return f;
}

// Exact denominator of the prescribed-zero construction, available without
// any radical: the product of 1 - <z, a_j>.
inline CPoly prescribed_zeros_denominator(const std::vector<std::vector<CRat>>& points) {
    if (points.empty()) throw std::invalid_argument("need at least one prescribed zero");
    int n = static_cast<int>(points[0].size());
    CPoly q(n);
    q.add_term(MultiIndex(n), CRat(1));
    for (const auto& a : points) {
        if (static_cast<int>(a.size()) != n)
            throw std::invalid_argument("prescribed zeros live in different dimensions");
        CPoly factor(n);
        factor.add_term(MultiIndex(n), CRat(1));
        for (int k = 0; k < n; ++k) factor.add_term(unit_index(n, k), -a[k].conj());
        q = q * factor;
    }
    return q;
}

// Common zeros of a one-variable map inside the open unit disc: roots of
// the first component, kept when every component vanishes there.
inline std::vector<CDouble> univariate_map_zeros_in_disc(const ApproxMap& f) {
    if (f.n != 1) throw std::invalid_argument("zero finder handles one variable only");
    if (f.components.empty()) throw std::invalid_argument("map has no components");
    const ApproxPoly& lead = f.components.front();
    int deg = 0;
    for (const auto& [m, c] : lead.terms) deg = std::max(deg, m[0]);
    std::vector<CDouble> coeffs(deg + 1, CDouble(0));
    for (const auto& [m, c] : lead.terms) coeffs[m[0]] = c;
    std::vector<CDouble> zeros;
    for (const CDouble& root : durand_kerner(coeffs)) {
        if (std::abs(root) >= 1.0 - 1e-9) continue;
        bool common = true;
        for (const auto& comp : f.components)
            if (std::abs(approx_eval(comp, {root})) > 1e-8) common = false;
        if (common) zeros.push_back(root);
    }
    return zeros;
}

}  // namespace ballmaps
