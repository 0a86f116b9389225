#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballmaps {

// Exponent vector of a monomial. The number of variables is e.size().
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(int nvars) : e(nvars, 0) {}
    MultiIndex(std::initializer_list<int> init) : e(init) {}

    int nvars() const { return static_cast<int>(e.size()); }
    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_zero() const { return degree() == 0; }

    int operator[](int i) const { return e[i]; }
    int& operator[](int i) { return e[i]; }
};

inline bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }
inline bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

// Graded lexicographic order: lower total degree first, ties broken
// lexicographically with the first variable most significant.
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    if (a.e.size() != b.e.size())
        throw std::invalid_argument("comparing multi-indices with different variable counts");
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
}

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

inline MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.e.size() != b.e.size())
        throw std::invalid_argument("adding multi-indices with different variable counts");
    MultiIndex c(a.nvars());
    for (int i = 0; i < a.nvars(); ++i) c.e[i] = a.e[i] + b.e[i];
    return c;
}

// Componentwise a >= b, so x^b divides x^a.
inline bool divides(const MultiIndex& b, const MultiIndex& a) {
    if (a.e.size() != b.e.size()) return false;
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] < b.e[i]) return false;
    return true;
}

inline MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    if (!divides(b, a)) throw std::domain_error("multi-index subtraction would go negative");
    MultiIndex c(a.nvars());
    for (int i = 0; i < a.nvars(); ++i) c.e[i] = a.e[i] - b.e[i];
    return c;
}

inline MultiIndex unit_index(int nvars, int var) {
    MultiIndex m(nvars);
    m.e[var] = 1;
    return m;
}

inline std::string index_str(const MultiIndex& m) {
    std::string s = "(";
    for (int i = 0; i < m.nvars(); ++i) {
        if (i) s += ",";
        s += std::to_string(m.e[i]);
    }
    return s + ")";
}

// All multi-indices in nvars variables of total degree exactly d, grlex order.
inline std::vector<MultiIndex> indices_of_degree(int nvars, int d) {
    std::vector<MultiIndex> out;
    MultiIndex cur(nvars);
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == nvars - 1) {
            cur.e[var] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur.e[var] = v;
            self(self, var + 1, rem - v);
        }
    };
    if (nvars == 0) {
        if (d == 0) out.push_back(cur);
        return out;
    }
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
}

// All multi-indices with 1 <= degree <= d, grlex order.
inline std::vector<MultiIndex> indices_up_to_degree(int nvars, int d) {
    std::vector<MultiIndex> out;
    for (int k = 1; k <= d; ++k) {
        auto part = indices_of_degree(nvars, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace ballmaps
