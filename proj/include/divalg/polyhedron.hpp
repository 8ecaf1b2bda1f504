#pragma once

#include "divalg/cone.hpp"
#include "divalg/lp.hpp"

namespace divalg {

/// { x in R^dim : forms[i] . x >= bounds[i] }.
struct RationalPolyhedron {
    std::size_t dim = 0;
    std::vector<Vec> forms;
    Vec bounds;

    bool contains(const Vec& x) const {
        for (std::size_t i = 0; i < forms.size(); ++i)
            if (dot(forms[i], x) < bounds[i]) return false;
        return true;
    }

    bool contains_q(const QVec& x) const {
        for (std::size_t i = 0; i < forms.size(); ++i)
            if (dot_q(forms[i], x) < Rat(bounds[i])) return false;
        return true;
    }
};

/// Vertices of the polyhedron, exactly: basic feasible points from every
/// invertible dim-subset of the constraints, lexicographically sorted.
inline std::vector<QVec> polyhedron_vertices(const RationalPolyhedron& p) {
    std::vector<QVec> verts;
    detail::for_each_subset(p.forms.size(), p.dim, [&](const std::vector<std::size_t>& idx) {
        std::vector<QVec> a(p.dim, QVec(p.dim));
        QVec b(p.dim);
        for (std::size_t k = 0; k < p.dim; ++k) {
            for (std::size_t j = 0; j < p.dim; ++j) a[k][j] = Rat(p.forms[idx[k]][j]);
            b[k] = Rat(p.bounds[idx[k]]);
        }
        bool unique = false;
        auto x = q_solve(std::move(a), std::move(b), &unique);
        if (!x || !unique) return;
        if (p.contains_q(*x)) verts.push_back(std::move(*x));
    });
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

/// One face of a polyhedron, identified by its exact tight constraint set.
struct FaceReport {
    std::vector<std::size_t> tight;  // constraint indices exactly active
    std::size_t dim = 0;
    bool compact = false;
    std::vector<QVec> vertices;           // vertices lying on the face
    std::optional<Rat> squared_length;    // for compact segments
};

/// All nonempty faces, each as its exact tight set, classified by dimension
/// and compactness. Throws when the constraint count exceeds the cap, since
/// the search is over all constraint subsets.
inline std::vector<FaceReport> face_lattice(const RationalPolyhedron& p,
                                            std::size_t cap_forms = 20) {
    const std::size_t s = p.forms.size();
    if (s > cap_forms)
        throw ResourceError("face lattice: " + std::to_string(s) +
                            " constraints exceed the cap of " + std::to_string(cap_forms));
    std::vector<QVec> verts = polyhedron_vertices(p);
    // Lineality directions of the whole system lie in the recession cone of
    // every face, so any of them already rules out compactness everywhere.
    const bool has_lineality =
        p.forms.empty() ? p.dim > 0 : !null_space(p.forms, p.dim).empty();
    std::vector<FaceReport> out;
    // Enumerate subsets via bitmask; the cap keeps this bounded.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << s); ++mask) {
        std::vector<std::size_t> j_in, j_out;
        for (std::size_t i = 0; i < s; ++i)
            (mask >> i) & 1 ? j_in.push_back(i) : j_out.push_back(i);
        // Strict feasibility of: tight on j_in, slack on j_out.
        std::vector<QVec> a;
        QVec b;
        auto push = [&](const Vec& f, const Rat& bound, const Rat& sign) {
            QVec row(p.dim + 1, Rat(0));
            for (std::size_t k = 0; k < p.dim; ++k) row[k] = sign * Rat(f[k]);
            a.push_back(std::move(row));
            b.push_back(sign * bound);
        };
        for (std::size_t i : j_in) {
            push(p.forms[i], Rat(p.bounds[i]), Rat(1));
            push(p.forms[i], Rat(p.bounds[i]), Rat(-1));
        }
        for (std::size_t i : j_out) {
            QVec row(p.dim + 1);
            for (std::size_t k = 0; k < p.dim; ++k) row[k] = Rat(p.forms[i][k]);
            row[p.dim] = -1;  // sigma_i(x) - eps >= a_i
            a.push_back(std::move(row));
            b.push_back(Rat(p.bounds[i]));
        }
        {
            QVec row(p.dim + 1, Rat(0));
            row[p.dim] = -1;
            a.push_back(std::move(row));
            b.push_back(Rat(-1));  // eps <= 1
        }
        QVec c(p.dim + 1, Rat(0));
        c[p.dim] = 1;
        LPResult r = rational_lp(a, b, c, true);
        bool nonempty = j_out.empty()
                            ? (r.status == LPStatus::Optimal && r.value >= 0) ||
                                  r.status == LPStatus::Unbounded
                            : (r.status == LPStatus::Optimal && r.value > 0) ||
                                  r.status == LPStatus::Unbounded;
        if (!nonempty) continue;

        FaceReport face;
        face.tight = j_in;
        std::vector<Vec> tight_forms;
        for (std::size_t i : j_in) tight_forms.push_back(p.forms[i]);
        face.dim = p.dim - int_rank(tight_forms);
        // Recession cone of the face: sigma_J = 0, all other forms >= 0.
        // Compact iff it is {0}, i.e. the normalized slack objective cannot
        // leave zero and the system has no lineality.
        if (has_lineality) {
            face.compact = false;
        } else {
            std::vector<QVec> ra;
            QVec rb;
            for (std::size_t i : j_in) {
                QVec row(p.dim);
                for (std::size_t k = 0; k < p.dim; ++k) row[k] = Rat(p.forms[i][k]);
                ra.push_back(row);
                rb.push_back(Rat(0));
                for (auto& e : row) e = -e;
                ra.push_back(std::move(row));
                rb.push_back(Rat(0));
            }
            QVec obj(p.dim, Rat(0));
            for (std::size_t i : j_out) {
                QVec row(p.dim);
                for (std::size_t k = 0; k < p.dim; ++k) {
                    row[k] = Rat(p.forms[i][k]);
                    obj[k] += Rat(p.forms[i][k]);
                }
                ra.push_back(std::move(row));
                rb.push_back(Rat(0));
            }
            {
                QVec row(p.dim);
                for (std::size_t k = 0; k < p.dim; ++k) row[k] = -obj[k];
                ra.push_back(std::move(row));
                rb.push_back(Rat(-1));  // normalize: sum of slack values <= 1
            }
            LPResult rr = rational_lp(ra, rb, obj, true);
            face.compact = !(rr.status == LPStatus::Optimal && rr.value > 0);
        }
        for (const QVec& v : verts) {
            bool on_face = true;
            for (std::size_t i : j_in)
                if (dot_q(p.forms[i], v) != Rat(p.bounds[i])) on_face = false;
            if (on_face) face.vertices.push_back(v);
        }
        if (face.compact && face.dim == 1 && face.vertices.size() == 2) {
            Rat len = 0;
            for (std::size_t k = 0; k < p.dim; ++k) {
                Rat d = face.vertices[0][k] - face.vertices[1][k];
                len += d * d;
            }
            face.squared_length = len;
        }
        out.push_back(std::move(face));
    }
    return out;
}

/// All lattice points of a bounded polyhedron, by coordinate scan over the
/// vertex bounding box with interval pruning. Throws when unbounded.
inline std::vector<Vec> lattice_points(const RationalPolyhedron& p,
                                       const Int& point_cap = Int(5000000)) {
    const std::size_t dim = p.dim;
    std::vector<QVec> verts = polyhedron_vertices(p);
    if (verts.empty()) return {};
    // Boundedness: no nonzero recession direction.
    {
        std::vector<QVec> a;
        QVec b;
        QVec obj(dim, Rat(0));
        for (const Vec& f : p.forms) {
            QVec row(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                row[k] = Rat(f[k]);
                obj[k] += Rat(f[k]);
            }
            a.push_back(std::move(row));
            b.push_back(Rat(0));
        }
        LPResult r = rational_lp(a, b, obj, true);
        if (r.status != LPStatus::Optimal || r.value != 0 ||
            null_space(p.forms, dim).size() > 0)
            throw HypothesisError("lattice point scan requires a bounded region");
    }
    Vec lo(dim), hi(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        Rat mn = verts[0][k], mx = verts[0][k];
        for (const QVec& v : verts) {
            mn = std::min(mn, v[k]);
            mx = std::max(mx, v[k]);
        }
        lo[k] = rat_ceil(mn);
        hi[k] = rat_floor(mx);
    }
    Int volume = 1;
    for (std::size_t k = 0; k < dim; ++k) {
        if (hi[k] < lo[k]) return {};
        volume *= hi[k] - lo[k] + 1;
        if (volume > point_cap)
            throw ResourceError("lattice point scan box too large: " + volume.str());
    }
    // Per-form interval slack from the unassigned suffix coordinates.
    std::vector<Vec> suffix_max(p.forms.size(), Vec(dim + 1, Int(0)));
    for (std::size_t i = 0; i < p.forms.size(); ++i)
        for (std::size_t k = dim; k-- > 0;) {
            const Int& c = p.forms[i][k];
            suffix_max[i][k] = suffix_max[i][k + 1] + (c >= 0 ? c * hi[k] : c * lo[k]);
        }
    std::vector<Vec> out;
    Vec x(dim, Int(0));
    std::vector<Int> partial(p.forms.size(), Int(0));  // forms on x[0..k)
    // Depth-first over coordinates with pruning.
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == dim) {
            out.push_back(x);
            return;
        }
        for (Int v = lo[k]; v <= hi[k]; ++v) {
            x[k] = v;
            bool ok = true;
            std::vector<Int> np = partial;
            for (std::size_t i = 0; i < p.forms.size() && ok; ++i) {
                np[i] += p.forms[i][k] * v;
                if (np[i] + suffix_max[i][k + 1] < p.bounds[i]) ok = false;
            }
            if (!ok) continue;
            std::swap(partial, np);
            rec(k + 1);
            std::swap(partial, np);
        }
    };
    rec(0);
    return out;
}

}  // namespace divalg
