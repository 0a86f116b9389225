#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballmaps/herm_form.hpp"
#include "ballmaps/linalg.hpp"
#include "ballmaps/multi_index.hpp"
#include "ballmaps/poly.hpp"
#include "ballmaps/poly_map.hpp"

namespace ballmaps {

// Dimension of the space of polynomials of degree at most d in n variables
// with no constant term.
inline long jet_space_dimension(int n, int d) {
    if (n < 1 || d < 1) throw std::domain_error("dimension count needs n, d >= 1");
    Integer c = 1;
    for (int i = 1; i <= d; ++i) c = Integer(c * (n + i) / i);
    c -= 1;
    if (!c.fits_slong_p()) throw std::overflow_error("jet space dimension overflows");
    return c.get_si();
}

// A Hermitian form on the monomials of order 1 through d-1: the data that
// determines a sphere-normalized form of order d.
struct JetForm {
    int n = 0;
    int d = 0;
    HermForm A;
};

struct CompletedForm {
    HermForm C;
    int unknowns = 0;
    int equations = 0;
    int rank = 0;
};

namespace detail {

// One real direction in the space of Hermitian forms, as a pair
// polynomial: a diagonal slot, or the real or imaginary perturbation of an
// off-diagonal slot.
struct HermDirection {
    MultiIndex a, b;
    bool imaginary = false;
};

inline CPoly direction_pair_poly(const HermDirection& dir, int n) {
    CPoly p(2 * n);
    MultiIndex ab(2 * n), ba(2 * n);
    for (int j = 0; j < n; ++j) {
        ab[j] = dir.a[j];
        ab[n + j] = dir.b[j];
        ba[j] = dir.b[j];
        ba[n + j] = dir.a[j];
    }
    if (dir.a == dir.b) {
        p.add_term(ab, CRat(1));
        return p;
    }
    if (dir.imaginary) {
        p.add_term(ab, CRat(rat(0), rat(1)));
        p.add_term(ba, CRat(rat(0), rat(-1)));
    } else {
        p.add_term(ab, CRat(1));
        p.add_term(ba, CRat(1));
    }
    return p;
}

inline std::vector<HermDirection> hermitian_directions(const std::vector<MultiIndex>& basis,
                                                       int lowest_free_degree) {
    std::vector<HermDirection> dirs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            if (basis[i].degree() < lowest_free_degree && basis[j].degree() < lowest_free_degree)
                continue;
            dirs.push_back({basis[i], basis[j], false});
            if (i != j) dirs.push_back({basis[i], basis[j], true});
        }
    return dirs;
}

// Rows of the residue system: the coefficients of the remainder of each
// direction modulo the complexified sphere, split into real and imaginary
// parts.
struct ResidueSystem {
    RatMat M;
    RatVec b;
    std::vector<HermDirection> dirs;
};

inline ResidueSystem residue_system(const std::vector<HermDirection>& dirs, const CPoly& rhs, int n) {
    CPoly s = sphere_pair_poly(n);
    std::vector<CPoly> rems;
    rems.reserve(dirs.size());
    for (const auto& dir : dirs) rems.push_back(poly_divide(direction_pair_poly(dir, n), s).remainder);
    CPoly rem0 = poly_divide(rhs, s).remainder;
    std::map<MultiIndex, int, GrlexLess> row_of;
    auto note = [&](const CPoly& p) {
        for (const auto& [m, c] : p.terms)
            if (!row_of.count(m)) {
                int next = static_cast<int>(row_of.size());
                row_of.emplace(m, next);
            }
    };
    for (const auto& r : rems) note(r);
    note(rem0);
    int rows = 2 * static_cast<int>(row_of.size());
    int cols = static_cast<int>(dirs.size());
    ResidueSystem sys;
    sys.M.assign(rows, RatVec(cols, rat(0)));
    sys.b.assign(rows, rat(0));
    for (int t = 0; t < cols; ++t)
        for (const auto& [m, c] : rems[t].terms) {
            int r = row_of[m];
            sys.M[2 * r][t] = c.re;
            sys.M[2 * r + 1][t] = c.im;
        }
    for (const auto& [m, c] : rem0.terms) {
        int r = row_of[m];
        sys.b[2 * r] = Rational(-c.re);
        sys.b[2 * r + 1] = Rational(-c.im);
    }
    sys.dirs = dirs;
    return sys;
}

}  // namespace detail

// Completes a jet to the unique sphere-normalized Hermitian form of order
// d: the entries with at least one index of order d are solved from the
// exact divisibility residue of C - 1 by the complexified sphere, and the
// result is re-verified against the sphere identity.
inline CompletedForm jet_complete(const JetForm& J) {
    if (J.n < 1 || J.d < 1) throw std::invalid_argument("completion needs n, d >= 1");
    if (!J.A.entries.empty() && J.A.n != J.n)
        throw std::invalid_argument("jet form variable count mismatch");
    for (const auto& [k, c] : J.A.entries) {
        int da = k.first.degree(), db = k.second.degree();
        if (da < 1 || da > J.d - 1 || db < 1 || db > J.d - 1)
            throw std::invalid_argument("jet entries must have orders between 1 and d - 1");
    }
    std::vector<MultiIndex> basis = indices_up_to_degree(J.n, J.d);
    std::vector<detail::HermDirection> dirs = detail::hermitian_directions(basis, J.d);
    CPoly rhs = J.A.entries.empty() ? CPoly(2 * J.n) : form_pair_poly(J.A);
    rhs.add_term(MultiIndex(2 * J.n), CRat(-1));
    detail::ResidueSystem sys = detail::residue_system(dirs, rhs, J.n);
    LinearSolution sol = solve_linear(sys.M, sys.b);
    if (!sol.consistent) throw std::logic_error("completion system is inconsistent");
    if (!sol.nullspace.empty()) throw std::logic_error("completion system is underdetermined");
    CompletedForm out;
    out.C = J.A.entries.empty() ? HermForm(J.n) : J.A;
    out.unknowns = static_cast<int>(dirs.size());
    out.equations = static_cast<int>(sys.b.size());
    out.rank = sol.rank;
    std::map<std::pair<MultiIndex, MultiIndex>, CRat, IndexPairLess> solved;
    for (std::size_t t = 0; t < dirs.size(); ++t) {
        CRat delta = dirs[t].imaginary ? CRat(rat(0), sol.particular[t]) : CRat(sol.particular[t]);
        solved[{dirs[t].a, dirs[t].b}] += delta;
    }
    for (const auto& [k, c] : solved)
        if (!c.is_zero()) out.C.add(k.first, k.second, c);
    if (!form_vanishes_on_sphere(form_sub(out.C, form_constant(J.n, rat(1)))))
        throw std::logic_error("completed form fails the sphere identity");
    return out;
}

// Real dimension of the affine space of all sphere-normalized Hermitian
// forms with orders between 1 and d: the number of free jet parameters.
inline long jet_solution_dimension(int n, int d) {
    if (n < 1 || d < 1) throw std::domain_error("dimension count needs n, d >= 1");
    std::vector<MultiIndex> basis = indices_up_to_degree(n, d);
    std::vector<detail::HermDirection> dirs = detail::hermitian_directions(basis, 1);
    CPoly rhs(2 * n);
    rhs.add_term(MultiIndex(2 * n), CRat(-1));
    detail::ResidueSystem sys = detail::residue_system(dirs, rhs, n);
    LinearSolution sol = solve_linear(sys.M, sys.b);
    if (!sol.consistent) throw std::logic_error("normalization system is inconsistent");
    return static_cast<long>(sol.nullspace.size());
}

// PSD certificate of the completed form over the full monomial basis of
// orders 1 through d, so missing rows count as zero.
inline PsdCertificate psd_region_membership(const JetForm& J) {
    CompletedForm comp = jet_complete(J);
    return form_definiteness(comp.C, indices_up_to_degree(J.n, J.d));
}

// The five by five demo: membership of (x, y, zeta) in the nonnegativity
// region, by the closed-form inequalities and independently by completing
// the jet and testing the full matrix. The two verdicts must agree.
inline bool spectrahedron_demo(const Rational& x, const Rational& y, const CRat& zeta) {
    Rational zn = zeta.norm();
    Rational inner = Rational(x * y);
    Rational outer = Rational(Rational(1 - x) * Rational(1 - y));
    bool closed = x >= 0 && x <= 1 && y >= 0 && y <= 1 && zn <= inner && zn <= outer;
    JetForm J;
    J.n = 2;
    J.d = 2;
    J.A = HermForm(2);
    J.A.add(unit_index(2, 0), unit_index(2, 0), CRat(x));
    J.A.add(unit_index(2, 1), unit_index(2, 1), CRat(y));
    J.A.add(unit_index(2, 0), unit_index(2, 1), zeta);
    bool solver = psd_region_membership(J).is_psd();
    if (closed != solver)
        throw std::logic_error("closed-form region disagrees with the completion verdict");
    return closed;
}

namespace detail {

inline double crat_double(const CRat& c, bool imag) {
    return imag ? c.im.get_d() : c.re.get_d();
}

inline double form_value_double(const HermForm& F, const std::vector<std::complex<double>>& z) {
    std::complex<double> total = 0;
    for (const auto& [k, c] : F.entries) {
        std::complex<double> mono = 1;
        for (int j = 0; j < F.n; ++j) {
            for (int e = 0; e < k.first[j]; ++e) mono *= z[j];
            for (int e = 0; e < k.second[j]; ++e) mono *= std::conj(z[j]);
        }
        total += std::complex<double>(c.re.get_d(), c.im.get_d()) * mono;
    }
    return total.real();
}

inline double min_on_sphere_sample(const HermForm& F, int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        std::vector<std::complex<double>> z(F.n);
        double norm = 0;
        for (int j = 0; j < F.n; ++j) {
            z[j] = {gauss(rng), gauss(rng)};
            norm += std::norm(z[j]);
        }
        if (norm == 0) continue;
        double scale = 1.0 / std::sqrt(norm);
        for (auto& c : z) c *= scale;
        best = std::min(best, form_value_double(F, z));
    }
    return best;
}

}  // namespace detail

// Multiplies a form by the squared norm of the coordinates, the one-step
// building block of positivity stabilization.
inline HermForm multiply_by_squared_norm(const HermForm& F) {
    CPoly u(2 * F.n);
    for (int j = 0; j < F.n; ++j) {
        MultiIndex m(2 * F.n);
        m[j] = 1;
        m[F.n + j] = 1;
        u.add_term(m, CRat(1));
    }
    return form_from_pair_poly(form_pair_poly(F) * u, F.n);
}

enum class StabilizeMode { PSD, PD };

struct Stabilization {
    int m = 0;
    HermForm F;
};

inline constexpr int kStabilizeCap = 64;

// Finds the least power m so that the coefficient form of ||z||^{2m} times
// R meets the requested definiteness, testing over the full homogeneous
// monomial basis at each step. Strict positivity of R on the sphere is the
// caller's claim; it is sampled numerically and a violation only warns,
// since a false claim merely drives the search into the cap.
inline Stabilization stabilize(const HermForm& R, StabilizeMode mode) {
    if (R.is_zero()) throw std::invalid_argument("stabilization needs a nonzero form");
    int h = R.entries.begin()->first.first.degree();
    for (const auto& [k, c] : R.entries)
        if (k.first.degree() != h || k.second.degree() != h)
            throw std::invalid_argument("stabilization needs a bihomogeneous form");
    if (detail::min_on_sphere_sample(R, 1000, 24601u) <= 0)
        std::cerr << "warning: sampled form values reach zero on the sphere; "
                     "stabilization may not terminate within the cap\n";
    Stabilization out{0, R};
    while (true) {
        PsdCertificate cert = form_definiteness(out.F, indices_of_degree(R.n, h + out.m));
        bool met = mode == StabilizeMode::PD ? cert.verdict == Definiteness::PD : cert.is_psd();
        if (met) return out;
        if (out.m >= kStabilizeCap)
            throw std::runtime_error("not stabilized within the cap; the form is likely not "
                                     "strictly positive on the sphere");
        out.F = multiply_by_squared_norm(out.F);
        ++out.m;
    }
}

namespace detail {

// Re-indexes a form of order at most h as a bihomogeneous form of degree h
// in one extra slack variable.
inline HermForm bihomogenize_form(const HermForm& F, int h) {
    HermForm out(F.n + 1);
    for (const auto& [k, c] : F.entries) {
        if (k.first.degree() > h || k.second.degree() > h)
            throw std::invalid_argument("form order exceeds the homogenization degree");
        MultiIndex a(F.n + 1), b(F.n + 1);
        for (int j = 0; j < F.n; ++j) {
            a[j] = k.first[j];
            b[j] = k.second[j];
        }
        a[F.n] = h - k.first.degree();
        b[F.n] = h - k.second.degree();
        out.entries.emplace(std::make_pair(a, b), c);
    }
    return out;
}

// Drops the slack variable, collapsing indices that agree on the original
// coordinates.
inline HermForm dehomogenize_form(const HermForm& F) {
    if (F.n < 2) throw std::invalid_argument("no slack variable to drop");
    HermForm out(F.n - 1);
    for (const auto& [k, c] : F.entries) {
        MultiIndex a(F.n - 1), b(F.n - 1);
        for (int j = 0; j + 1 < F.n; ++j) {
            a[j] = k.first[j];
            b[j] = k.second[j];
        }
        auto key = std::make_pair(a, b);
        auto it = out.entries.find(key);
        if (it == out.entries.end())
            out.entries.emplace(key, c);
        else
            it->second += c;
    }
    for (auto it = out.entries.begin(); it != out.entries.end();)
        it = it->second.is_zero() ? out.entries.erase(it) : std::next(it);
    return out;
}

// Bihomogeneous slack term vanishing on the image of the unit sphere in
// the slack chart: (|t|^2 - ||z||^2)^2 (||z||^2 + |t|^2)^{h-2}.
inline HermForm slack_form(int n, int h) {
    if (h < 2) throw std::invalid_argument("slack term needs order at least two");
    CPoly diff(2 * (n + 1)), total(2 * (n + 1));
    for (int j = 0; j <= n; ++j) {
        MultiIndex m(2 * (n + 1));
        m[j] = 1;
        m[n + 1 + j] = 1;
        total.add_term(m, CRat(1));
        diff.add_term(m, CRat(j == n ? 1 : -1));
    }
    CPoly p = diff * diff;
    for (int e = 0; e < h - 2; ++e) p = p * total;
    return form_from_pair_poly(p, n + 1);
}

}  // namespace detail

struct CompletionReport {
    bool direct_psd = false;
    int m = 0;           // stabilization power on the slack path
    Rational slack;      // coefficient of the slack term, zero on the direct path
    HermForm F;          // the completing form
    HermForm total;      // form of g plus F; proper
};

// Completes an origin-preserving contraction g of degree at most d - 1 to
// a proper form of order d - 1: F is a positive semidefinite form agreeing
// with ||z||^{2(d-1)} - ||g||^2 on the sphere. When that difference is not
// itself PSD, it is bihomogenized with a slack variable, shifted by a
// slack term vanishing on the sphere chart, and stabilized.
inline CompletionReport complete_to_proper(const PolyMap& g, int d) {
    int n = g.n;
    if (d < 2) throw std::invalid_argument("completion needs d >= 2");
    if (!g.is_zero() && map_degree(g) > d - 1)
        throw std::invalid_argument("map degree exceeds d - 1");
    if (!is_origin_preserving(g)) throw std::invalid_argument("completion needs g(0) = 0");
    HermForm gf = squared_norm_form(g);
    HermForm R = form_sub(norm_power_form(n, d - 1), gf);
    if (detail::min_on_sphere_sample(R, 1000, 93187u) <= 0)
        std::cerr << "warning: sampled values of the completion residue reach zero on the "
                     "sphere; g may not map the closed ball inside the ball\n";
    CompletionReport rep;
    if (form_definiteness(R).is_psd()) {
        rep.direct_psd = true;
        rep.F = R;
    } else {
        HermForm rh = detail::bihomogenize_form(R, d - 1);
        bool done = false;
        Rational c = rat(1);
        for (int attempt = 0; attempt < 10 && !done; ++attempt, c *= 2) {
            HermForm shifted = rh;
            if (d >= 3) shifted = form_add(rh, form_scale(detail::slack_form(n, d - 1), c));
            try {
                // setting the slack variable to one restores R on the sphere
                // up to the factor 2^m from the stabilizing multiplier
                Stabilization st = stabilize(shifted, StabilizeMode::PSD);
                Rational denom = rat(1);
                for (int e = 0; e < st.m; ++e) denom *= 2;
                rep.m = st.m;
                rep.slack = d >= 3 ? c : rat(0);
                rep.F = form_scale(detail::dehomogenize_form(st.F), Rational(rat(1) / denom));
                done = true;
            } catch (const std::runtime_error&) {
                if (d < 3) throw;
            }
        }
        if (!done)
            throw std::runtime_error("not stabilized within the cap; the form is likely not "
                                     "strictly positive on the sphere");
    }
    rep.total = form_add(gf, rep.F);
    if (!form_definiteness(rep.F).is_psd())
        throw std::logic_error("completing form lost positive semidefiniteness");
    if (!form_vanishes_on_sphere(form_sub(rep.total, form_constant(n, rat(1)))))
        throw std::logic_error("completed form fails the sphere identity");
    return rep;
}

}  // namespace ballmaps
