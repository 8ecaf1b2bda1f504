#pragma once

#include "divalg/report.hpp"
#include "divalg/semigroup.hpp"

namespace divalg {

/// A parsed problem document: one semigroup description plus the optional
/// payload vectors the commands consume.
struct ProblemFile {
    std::size_t ambient = 0;  // dimension of the input lattice
    AffineSemigroup semigroup;
    std::vector<Vec> xi;      // optional form system, in gp(S) coordinates
    std::vector<Vec> zeta;    // optional second system (intersections)
    std::optional<Vec> bounds;
    std::optional<Vec> bounds_b;
    std::optional<Vec> class_coords;
    std::optional<Vec> offset_coords;
    std::vector<std::size_t> face;
    Json options = Json::object();
};

namespace detail {

inline Vec json_to_vec(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of integers");
    Vec v;
    for (const auto& e : j) {
        if (e.is_number_integer())
            v.push_back(Int(e.get<std::int64_t>()));
        else if (e.is_string())
            v.push_back(Int(e.get<std::string>()));
        else
            throw InputError(where + ": entries must be integers");
    }
    return v;
}

inline std::vector<Vec> json_to_rows(const Json& j, std::size_t width,
                                     const std::string& where) {
    std::vector<Vec> rows;
    if (!j.is_array()) throw InputError(where + ": expected an array of rows");
    for (const auto& e : j) {
        Vec row = json_to_vec(e, where);
        if (row.size() != width)
            throw InputError(where + ": row length " + std::to_string(row.size()) +
                             ", expected " + std::to_string(width));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Z-basis of {x : E x = 0, B_k x = 0 mod c_k}: the kernel of the stacked
/// integer map on (x, y) with congruence slacks y, projected back to x.
inline std::vector<Vec> solution_lattice(std::size_t n, const std::vector<Vec>& equations,
                                         const std::vector<Vec>& cong_forms,
                                         const std::vector<Int>& cong_moduli) {
    const std::size_t k = cong_forms.size();
    std::vector<Vec> rows;  // rows of the constraint matrix, on (x, y)
    for (const Vec& e : equations) {
        Vec row = e;
        row.resize(n + k, Int(0));
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < k; ++i) {
        Vec row = cong_forms[i];
        row.resize(n + k, Int(0));
        row[n + i] = cong_moduli[i];
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < n; ++i) {
            Vec e(n, Int(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    // Integer kernel: rows of U facing zero rows of the Hermite form of the
    // transposed constraint matrix.
    IntMatrix m(n + k, rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t i = 0; i < n + k; ++i) m.at(i, j) = rows[j][i];
    auto [h, u] = hermite_normal_form(m);
    std::vector<Vec> xs;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (!is_zero(h.row(i))) continue;
        Vec row = u.row(i);
        Vec x(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
        if (!is_zero(x)) xs.push_back(std::move(x));
    }
    return xs;
}

/// S = L cap Z_+^n for the solution lattice L: Hilbert basis of the cone
/// {t : M t >= 0} in lattice coordinates, mapped back to the ambient space.
inline AffineSemigroup semigroup_from_lattice(std::size_t n, const std::vector<Vec>& spanning) {
    if (spanning.empty()) throw InputError("empty semigroup description");
    IntMatrix m = IntMatrix::from_columns(spanning, n);
    auto [ht, ut] = hermite_normal_form(m.transpose());
    (void)ut;
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < ht.rows(); ++i)
        if (!is_zero(ht.row(i))) basis.push_back(ht.row(i));
    if (basis.empty()) throw InputError("empty semigroup description");
    IntMatrix embed = IntMatrix::from_columns(basis, n);
    std::vector<Vec> forms;  // coordinate functionals pulled back to t
    for (std::size_t i = 0; i < n; ++i) {
        Vec f(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) f[j] = embed.at(i, j);
        if (!is_zero(f)) forms.push_back(std::move(f));
    }
    AffineSemigroup inner = AffineSemigroup::from_inequalities(forms);
    std::vector<Vec> gens;
    for (const Vec& h : inner.hilbert) gens.push_back(embed.mul_vec(h));
    return AffineSemigroup::from_generators(gens);
}

/// Pulls an ambient form back to gp(S) coordinates through the embedding.
inline Vec pull_back_form(const AffineSemigroup& s, const Vec& f) {
    Vec g(s.rank);
    for (std::size_t j = 0; j < s.rank; ++j) {
        Int v = 0;
        for (std::size_t i = 0; i < s.embedding.rows(); ++i)
            v += f[i] * s.embedding.at(i, j);
        g[j] = v;
    }
    return g;
}

}  // namespace detail

inline ProblemFile parse_problem(const Json& doc) {
    if (!doc.is_object()) throw InputError("problem document must be an object");
    ProblemFile p;
    if (!doc.contains("rank") || !doc["rank"].is_number_integer())
        throw InputError("field 'rank': ambient dimension required");
    const auto rank_val = doc["rank"].get<std::int64_t>();
    if (rank_val < 1) throw InputError("field 'rank': must be positive");
    p.ambient = static_cast<std::size_t>(rank_val);

    const bool has_gens = doc.contains("generators");
    const bool has_ineq = doc.contains("inequalities");
    const bool has_diop = doc.contains("equations") || doc.contains("congruences");
    if (int(has_gens) + int(has_ineq) + int(has_diop) != 1)
        throw InputError(
            "exactly one of 'generators', 'inequalities', or "
            "'equations'/'congruences' must be present");
    if (has_gens) {
        p.semigroup = AffineSemigroup::from_generators(
            detail::json_to_rows(doc["generators"], p.ambient, "generators"));
    } else if (has_ineq) {
        p.semigroup = AffineSemigroup::from_inequalities(
            detail::json_to_rows(doc["inequalities"], p.ambient, "inequalities"));
    } else {
        std::vector<Vec> eqs, cforms;
        std::vector<Int> cmods;
        if (doc.contains("equations"))
            eqs = detail::json_to_rows(doc["equations"], p.ambient, "equations");
        if (doc.contains("congruences")) {
            if (!doc["congruences"].is_array())
                throw InputError("congruences: expected an array");
            for (const auto& c : doc["congruences"]) {
                if (!c.is_object() || !c.contains("form") || !c.contains("modulus"))
                    throw InputError("congruences: entries need 'form' and 'modulus'");
                Vec f = detail::json_to_vec(c["form"], "congruences.form");
                if (f.size() != p.ambient)
                    throw InputError("congruences.form: wrong length");
                Int mod(c["modulus"].get<std::int64_t>());
                if (mod < 2) throw InputError("congruences.modulus: must be >= 2");
                cforms.push_back(std::move(f));
                cmods.push_back(std::move(mod));
            }
        }
        p.semigroup = detail::semigroup_from_lattice(
            p.ambient, detail::solution_lattice(p.ambient, eqs, cforms, cmods));
    }

    if (doc.contains("xi"))
        for (Vec& f : detail::json_to_rows(doc["xi"], p.ambient, "xi"))
            p.xi.push_back(detail::pull_back_form(p.semigroup, f));
    if (doc.contains("zeta"))
        for (Vec& f : detail::json_to_rows(doc["zeta"], p.ambient, "zeta"))
            p.zeta.push_back(detail::pull_back_form(p.semigroup, f));
    if (doc.contains("bounds")) p.bounds = detail::json_to_vec(doc["bounds"], "bounds");
    if (doc.contains("bounds_b")) p.bounds_b = detail::json_to_vec(doc["bounds_b"], "bounds_b");
    if (doc.contains("class")) p.class_coords = detail::json_to_vec(doc["class"], "class");
    if (doc.contains("offset")) p.offset_coords = detail::json_to_vec(doc["offset"], "offset");
    if (doc.contains("face")) {
        for (const auto& e : doc["face"]) {
            if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
                throw InputError("face: expected facet indices");
            p.face.push_back(static_cast<std::size_t>(e.get<std::int64_t>()));
        }
    }
    if (doc.contains("options")) {
        if (!doc["options"].is_object()) throw InputError("options: expected an object");
        p.options = doc["options"];
    }
    return p;
}

inline ProblemFile parse_problem(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("problem document: ") + e.what());
    }
    return parse_problem(doc);
}

inline ProblemFile parse_problem(const char* text) {
    return parse_problem(std::string(text));
}

}  // namespace divalg
