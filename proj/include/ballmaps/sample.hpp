#pragma once

#include <random>
#include <vector>

#include "ballmaps/rational.hpp"

namespace ballmaps {

// Exact rational point on the real unit sphere in R^n via the stereographic
// parametrization c = (1 - |t|^2, 2 t_1, ..., 2 t_{n-1}) / (1 + |t|^2).
inline std::vector<Rational> rational_real_sphere_point(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    while (true) {
        std::vector<Rational> t(n - 1);
        Rational tt(0);
        for (auto& ti : t) {
            ti = rat(num(rng), den(rng));
            tt += ti * ti;
        }
        Rational denom = 1 + tt;
        std::vector<Rational> c(n);
        c[0] = (1 - tt) / denom;
        for (int i = 1; i < n; ++i) c[i] = 2 * t[i - 1] / denom;
        Rational check(0);
        for (const auto& ci : c) check += ci * ci;
        if (check == 1) return c;
    }
}

// Unit-modulus complex rational (p^2 - q^2 + 2pq i) / (p^2 + q^2).
inline CRat rational_phase(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(1, 9);
    Rational p = rat(pick(rng)), q = rat(pick(rng));
    Rational d = p * p + q * q;
    return {(p * p - q * q) / d, 2 * p * q / d};
}

// Exact complex rational points with sum |z_j|^2 = 1.
inline std::vector<std::vector<CRat>> rational_sphere_points(int n, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<CRat>> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        std::vector<Rational> c = rational_real_sphere_point(n, rng);
        std::vector<CRat> z(n);
        for (int i = 0; i < n; ++i) z[i] = rational_phase(rng) * CRat(c[i]);
        out.push_back(std::move(z));
    }
    return out;
}

// Random rational point strictly inside the standard k-simplex
// (all lambda_j > 0, sum < 1).
inline std::vector<Rational> rational_interior_simplex_point(int k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 19);
    while (true) {
        std::vector<Rational> lam(k);
        Rational total(0);
        for (auto& l : lam) {
            l = rat(num(rng), 20 * k + 1);
            total += l;
        }
        if (total < 1) return lam;
    }
}

}  // namespace ballmaps
