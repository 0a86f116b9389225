#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ballmaps/families.hpp"
#include "ballmaps/herm_form.hpp"
#include "ballmaps/poly_map.hpp"
#include "ballmaps/rational.hpp"

namespace ballmaps {

using Json = nlohmann::json;

// Thrown for malformed input documents; the message carries the JSON path.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline Rational rational_field(const Json& obj, const std::string& key,
                               const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string())
        throw ParseError(where + "." + key + ": expected a rational string \"p/q\"");
    try {
        return rat_parse(obj[key].get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + "." + key + ": " + e.what());
    }
}

inline int int_field(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number_integer())
        throw ParseError(where + "." + key + ": expected an integer");
    return obj[key].get<int>();
}

inline MultiIndex index_field(const Json& obj, const std::string& key, int nvars,
                              const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_array())
        throw ParseError(where + "." + key + ": expected an exponent array");
    MultiIndex m;
    for (const auto& v : obj[key]) {
        if (!v.is_number_integer() || v.get<int>() < 0)
            throw ParseError(where + "." + key + ": exponents must be nonnegative integers");
        m.e.push_back(v.get<int>());
    }
    if (m.nvars() != nvars)
        throw ParseError(where + "." + key + ": expected " + std::to_string(nvars) +
                         " exponents");
    return m;
}

inline Json index_json(const MultiIndex& m) {
    Json a = Json::array();
    for (int i = 0; i < m.nvars(); ++i) a.push_back(m[i]);
    return a;
}

}  // namespace detail

inline Json map_to_json(const PolyMap& f) {
    Json doc;
    doc["n"] = f.n;
    doc["N"] = f.N;
    Json terms = Json::array();
    for (const auto& [m, v] : f.terms)
        for (int i = 0; i < f.N; ++i) {
            if (v[i].is_zero()) continue;
            Json t;
            t["alpha"] = detail::index_json(m);
            t["component"] = i;
            t["re"] = rat_str(v[i].re);
            t["im"] = rat_str(v[i].im);
            terms.push_back(t);
        }
    doc["terms"] = terms;
    return doc;
}

inline PolyMap map_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("map: expected an object");
    PolyMap f;
    f.n = detail::int_field(doc, "n", "map");
    f.N = detail::int_field(doc, "N", "map");
    if (f.n < 1 || f.N < 1) throw ParseError("map: dimensions must be positive");
    if (!doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("map.terms: expected an array");
    int pos = 0;
    for (const auto& t : doc["terms"]) {
        std::string where = "map.terms[" + std::to_string(pos++) + "]";
        MultiIndex m = detail::index_field(t, "alpha", f.n, where);
        int comp = detail::int_field(t, "component", where);
        if (comp < 0 || comp >= f.N)
            throw ParseError(where + ".component: out of range for N=" + std::to_string(f.N));
        CRat c(detail::rational_field(t, "re", where), detail::rational_field(t, "im", where));
        if (c.is_zero()) throw ParseError(where + ": zero coefficients are not stored");
        auto it = f.terms.find(m);
        if (it == f.terms.end())
            it = f.terms.emplace(m, std::vector<CRat>(f.N, CRat(0))).first;
        if (!it->second[comp].is_zero())
            throw ParseError(where + ": duplicate (alpha, component) entry");
        it->second[comp] = c;
    }
    return f;
}

inline Json form_to_json(const HermForm& F) {
    Json doc;
    doc["n"] = F.n;
    Json entries = Json::array();
    for (const auto& [key, c] : F.entries) {
        if (grlex_less(key.second, key.first)) continue;
        Json e;
        e["alpha"] = detail::index_json(key.first);
        e["beta"] = detail::index_json(key.second);
        e["re"] = rat_str(c.re);
        e["im"] = rat_str(c.im);
        entries.push_back(e);
    }
    doc["entries"] = entries;
    return doc;
}

inline HermForm form_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("form: expected an object");
    int n = detail::int_field(doc, "n", "form");
    if (n < 1) throw ParseError("form: n must be positive");
    HermForm F(n);
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw ParseError("form.entries: expected an array");
    int pos = 0;
    for (const auto& e : doc["entries"]) {
        std::string where = "form.entries[" + std::to_string(pos++) + "]";
        MultiIndex a = detail::index_field(e, "alpha", n, where);
        MultiIndex b = detail::index_field(e, "beta", n, where);
        if (grlex_less(b, a))
            throw ParseError(where + ": entries must satisfy alpha <= beta; the mirror "
                                     "entry is implied");
        CRat c(detail::rational_field(e, "re", where), detail::rational_field(e, "im", where));
        if (c.is_zero()) throw ParseError(where + ": zero entries are not stored");
        if (a == b && c.im != 0)
            throw ParseError(where + ": diagonal entries must be real");
        if (!F.entry(a, b).is_zero()) throw ParseError(where + ": duplicate entry");
        F.add(a, b, c);
    }
    return F;
}

inline Json pencil_to_json(const FormPencil& pencil) {
    Json doc;
    doc["n"] = pencil.n;
    doc["k"] = pencil.k;
    Json gens = Json::array();
    for (const auto& g : pencil.generators) gens.push_back(form_to_json(g));
    doc["generators"] = gens;
    return doc;
}

inline FormPencil pencil_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("pencil: expected an object");
    int n = detail::int_field(doc, "n", "pencil");
    int k = detail::int_field(doc, "k", "pencil");
    if (!doc.contains("generators") || !doc["generators"].is_array())
        throw ParseError("pencil.generators: expected an array");
    std::vector<HermForm> gens;
    int pos = 0;
    for (const auto& g : doc["generators"]) {
        std::string where = "pencil.generators[" + std::to_string(pos++) + "]";
        HermForm F = form_from_json(g);
        if (F.n != n) throw ParseError(where + ": generator dimension disagrees with n");
        gens.push_back(F);
    }
    if (static_cast<int>(gens.size()) != k + 1)
        throw ParseError("pencil: expected k + 1 generators");
    try {
        return make_pencil(gens);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("pencil: ") + e.what());
    }
}

namespace detail {

inline Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << doc.dump(2) << "\n";
}

}  // namespace detail

inline PolyMap read_map_file(const std::string& path) {
    return map_from_json(detail::parse_file(path));
}
inline void write_map_file(const std::string& path, const PolyMap& f) {
    detail::write_file(path, map_to_json(f));
}

inline HermForm read_form_file(const std::string& path) {
    return form_from_json(detail::parse_file(path));
}
inline void write_form_file(const std::string& path, const HermForm& F) {
    detail::write_file(path, form_to_json(F));
}

inline FormPencil read_pencil_file(const std::string& path) {
    return pencil_from_json(detail::parse_file(path));
}
inline void write_pencil_file(const std::string& path, const FormPencil& pencil) {
    detail::write_file(path, pencil_to_json(pencil));
}

// Scalar polynomials (denominators, stabilization inputs) travel as maps
// with a single component.
inline CPoly read_scalar_file(const std::string& path) {
    PolyMap f = read_map_file(path);
    if (f.N != 1) throw ParseError(path + ": expected a single-component map");
    return component_poly(f, 0);
}

}  // namespace ballmaps
