#pragma once

#include "igusa/errors.hpp"
#include "igusa/linalg.hpp"
#include "igusa/numeric.hpp"
#include "igusa/series.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace igusa {

using IVec = std::vector<Int>;

inline Int dot(const IVec& a, const Exponent& w) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * w[i];
    return s;
}

inline Int dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int sigma(const IVec& k) {
    Int s = 0;
    for (const auto& x : k) s += x;
    return s;
}

// A supporting hyperplane a.x = m(a) carrying an (n-1)-dimensional face.
struct Facet {
    IVec normal; // primitive, entries >= 0
    Int offset;
};

// A face of the polyhedron, identified by the support points lying on it
// together with the coordinate directions of its recession cone.
struct Face {
    int id = -1;
    std::vector<Exponent> supp_points; // sorted
    std::vector<int> recession;        // sorted indices i with e_i in the face
    int dimension = 0;
    bool compact = false;
    bool proper = true;
    std::vector<int> facet_ids; // facets containing this face

    std::pair<std::vector<Exponent>, std::vector<int>> key() const {
        return {supp_points, recession};
    }
};

struct SimplicialPiece {
    std::vector<IVec> rays;              // linearly independent subset
    std::vector<IVec> lattice_points;    // of the (0,1] fundamental parallelepiped
};

// The cone of weight vectors whose first meet locus is a fixed face,
// decomposed into relatively open simplicial pieces.
struct Cone {
    int face_id = -1;
    std::vector<IVec> rays; // primitive normals of the containing facets
    std::vector<SimplicialPiece> pieces;
};

// Dominance-minimal exponents of the support.
inline std::vector<Exponent> minimal_support(const std::vector<Exponent>& supp) {
    std::vector<Exponent> out;
    for (const auto& w : supp) {
        bool minimal = true;
        for (const auto& v : supp)
            if (v != w && dominates(w, v)) { minimal = false; break; }
        if (minimal) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<Exponent> minimal_support(const PolySeries& f) {
    return minimal_support(f.support());
}

// For a certified series the candidates live below the declared support
// bound; exponents a little beyond it are spot-checked for dominance.
inline std::vector<Exponent> minimal_support(const SeriesSpec& f) {
    if (!f.has_tail()) return minimal_support(f.explicit_part());
    f.require_certificate("minimal_support");
    long B = f.support_bound();
    std::vector<Exponent> low;
    for_each_exponent(f.vars(), B, [&](const Exponent& e) {
        if (f.coefficient(e) != 0) low.push_back(e);
    });
    std::vector<Exponent> mins = minimal_support(low);
    long probe = std::max(B + 8, f.explicit_degree() + 4);
    for_each_exponent(f.vars(), probe, [&](const Exponent& e) {
        if (total_degree(e) <= B || f.coefficient(e) == 0) return;
        for (const auto& m : mins)
            if (dominates(e, m)) return;
        throw ValidationError("support_bound " + std::to_string(B) +
                              " misses a dominance-minimal exponent of degree " +
                              std::to_string(total_degree(e)));
    });
    if (mins.empty()) throw ValidationError("series has empty support below its support bound");
    return mins;
}

class NewtonPolyhedron {
public:
    int n = 0;
    std::vector<Exponent> generators; // dominance-minimal, sorted
    std::vector<Exponent> supp;       // full support used for face restriction
    std::vector<Facet> facets;        // sorted by normal
    std::vector<Face> faces;          // proper faces sorted, then the whole polyhedron
    std::vector<Exponent> vertices;   // 0-dimensional faces

    // min over generators of a.w; the infimum over the polyhedron is
    // attained at a generator because a >= 0.
    Int m_value(const IVec& a) const {
        Int best = dot(a, generators.front());
        for (size_t i = 1; i < generators.size(); ++i)
            best = std::min(best, dot(a, generators[i]));
        return best;
    }

    Face face_of(const IVec& a) const {
        Face f;
        bool zero = std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
        if (zero) {
            f.supp_points = supp;
            for (int i = 0; i < n; ++i) f.recession.push_back(i);
            f.dimension = n;
            f.compact = false;
            f.proper = false;
            f.id = static_cast<int>(faces.size()) - 1;
            return f;
        }
        Int m = m_value(a);
        for (const auto& w : supp)
            if (dot(a, w) == m) f.supp_points.push_back(w);
        for (int i = 0; i < n; ++i)
            if (a[static_cast<size_t>(i)] == 0) f.recession.push_back(i);
        f.dimension = face_dimension(f);
        f.compact = f.recession.empty();
        f.proper = true;
        if (auto it = face_index_.find(f.key()); it != face_index_.end()) {
            f.id = it->second;
            f.facet_ids = faces[static_cast<size_t>(it->second)].facet_ids;
        }
        return f;
    }

    int face_dimension(const Face& f) const {
        std::vector<std::vector<Rat>> rows;
        const Exponent& base = f.supp_points.front();
        for (const auto& w : f.supp_points) {
            if (w == base) continue;
            std::vector<Rat> row(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) row[static_cast<size_t>(i)] = Rat(w[i] - base[i]);
            rows.push_back(std::move(row));
        }
        for (int i : f.recession) {
            std::vector<Rat> row(static_cast<size_t>(n), Rat(0));
            row[static_cast<size_t>(i)] = Rat(1);
            rows.push_back(std::move(row));
        }
        return rows.empty() ? 0 : linalg::rank(std::move(rows));
    }

    const Face* find_face(const Face& probe) const {
        auto it = face_index_.find(probe.key());
        if (it == face_index_.end()) return nullptr;
        return &faces[static_cast<size_t>(it->second)];
    }

    void index_faces() {
        face_index_.clear();
        for (const auto& f : faces)
            if (f.proper) face_index_[f.key()] = f.id;
    }

private:
    std::map<std::pair<std::vector<Exponent>, std::vector<int>>, int> face_index_;
};

namespace detail {

inline std::optional<IVec> oriented_primitive_normal(const std::vector<std::vector<Rat>>& rows) {
    auto nv = linalg::null_vector(rows);
    if (!nv) return std::nullopt;
    IVec w = linalg::primitive_integer(*nv);
    bool pos = false, neg = false;
    for (const auto& x : w) {
        if (x > 0) pos = true;
        if (x < 0) neg = true;
    }
    if (pos && neg) return std::nullopt;
    if (neg)
        for (auto& x : w) x = -x;
    if (std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; })) return std::nullopt;
    return w;
}

} // namespace detail

// Facets by candidate-normal enumeration: null spaces of (n-1)-subsets of
// generator differences and unit vectors, kept when the first meet locus
// is (n-1)-dimensional. Faces are the first meet loci of sums of facet
// normal subsets, which exhausts them.
inline NewtonPolyhedron build_polyhedron(const std::vector<Exponent>& min_support, int n,
                                         std::vector<Exponent> full_support = {},
                                         int max_vars = 4) {
    if (min_support.empty()) throw ValidationError("cannot build a Newton polyhedron of 0");
    if (n > max_vars)
        throw DimensionTooLarge("polyhedron construction capped at " + std::to_string(max_vars) +
                                " variables");
    NewtonPolyhedron P;
    P.n = n;
    P.generators = minimal_support(min_support);
    P.supp = full_support.empty() ? P.generators : std::move(full_support);
    for (const auto& g : P.generators) P.supp.push_back(g);
    std::sort(P.supp.begin(), P.supp.end());
    P.supp.erase(std::unique(P.supp.begin(), P.supp.end()), P.supp.end());

    // Candidate spanning directions: generator differences plus units.
    std::vector<IVec> dirs;
    for (size_t i = 0; i < P.generators.size(); ++i)
        for (size_t j = i + 1; j < P.generators.size(); ++j) {
            IVec d(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) d[static_cast<size_t>(k)] = P.generators[i][k] - P.generators[j][k];
            dirs.push_back(std::move(d));
        }
    for (int i = 0; i < n; ++i) {
        IVec e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i)] = 1;
        dirs.push_back(std::move(e));
    }

    std::set<IVec> candidates;
    for (int i = 0; i < n; ++i) {
        IVec e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i)] = 1;
        candidates.insert(std::move(e));
    }
    std::vector<size_t> idx(static_cast<size_t>(std::max(0, n - 1)));
    std::function<void(size_t, size_t)> pick = [&](size_t pos, size_t start) {
        if (pos == idx.size()) {
            if (n == 1) return;
            std::vector<std::vector<Rat>> rows;
            for (size_t t = 0; t < idx.size(); ++t) {
                std::vector<Rat> row(static_cast<size_t>(n));
                for (int k = 0; k < n; ++k) row[static_cast<size_t>(k)] = Rat(dirs[idx[t]][static_cast<size_t>(k)]);
                rows.push_back(std::move(row));
            }
            if (linalg::rank(rows) != n - 1) return;
            if (auto w = detail::oriented_primitive_normal(rows)) candidates.insert(*w);
            return;
        }
        for (size_t i = start; i < dirs.size(); ++i) {
            idx[pos] = i;
            pick(pos + 1, i + 1);
        }
    };
    if (n == 1) {
        candidates.insert(IVec{1});
    } else {
        pick(0, 0);
    }

    for (const auto& a : candidates) {
        Int m = dot(a, P.generators.front());
        for (const auto& g : P.generators) m = std::min(m, dot(a, g));
        Face probe;
        for (const auto& w : P.supp)
            if (dot(a, w) == m) probe.supp_points.push_back(w);
        for (int i = 0; i < n; ++i)
            if (a[static_cast<size_t>(i)] == 0) probe.recession.push_back(i);
        if (P.face_dimension(probe) == n - 1) P.facets.push_back({a, m});
    }
    std::sort(P.facets.begin(), P.facets.end(),
              [](const Facet& x, const Facet& y) { return x.normal < y.normal; });

    // Enumerate faces as first meet loci of facet-subset normal sums.
    std::map<std::pair<std::vector<Exponent>, std::vector<int>>, Face> found;
    size_t fcount = P.facets.size();
    for (size_t mask = 1; mask < (size_t{1} << fcount); ++mask) {
        IVec a(static_cast<size_t>(n), 0);
        for (size_t j = 0; j < fcount; ++j)
            if (mask & (size_t{1} << j))
                for (int k = 0; k < n; ++k) a[static_cast<size_t>(k)] += P.facets[j].normal[static_cast<size_t>(k)];
        Int m = dot(a, P.generators.front());
        for (const auto& g : P.generators) m = std::min(m, dot(a, g));
        Face f;
        for (const auto& w : P.supp)
            if (dot(a, w) == m) f.supp_points.push_back(w);
        for (int i = 0; i < n; ++i)
            if (a[static_cast<size_t>(i)] == 0) f.recession.push_back(i);
        f.dimension = P.face_dimension(f);
        f.compact = f.recession.empty();
        found.emplace(f.key(), std::move(f));
    }

    for (auto& [key, f] : found) {
        for (size_t j = 0; j < fcount; ++j) {
            bool contains = true;
            for (const auto& w : f.supp_points)
                if (dot(P.facets[j].normal, w) != P.facets[j].offset) { contains = false; break; }
            if (contains)
                for (int i : f.recession)
                    if (P.facets[j].normal[static_cast<size_t>(i)] != 0) { contains = false; break; }
            if (contains) f.facet_ids.push_back(static_cast<int>(j));
        }
        P.faces.push_back(std::move(f));
    }
    std::sort(P.faces.begin(), P.faces.end(), [](const Face& x, const Face& y) {
        return std::make_tuple(x.dimension, x.supp_points, x.recession) <
               std::make_tuple(y.dimension, y.supp_points, y.recession);
    });
    Face whole;
    whole.supp_points = P.supp;
    for (int i = 0; i < n; ++i) whole.recession.push_back(i);
    whole.dimension = n;
    whole.compact = false;
    whole.proper = false;
    P.faces.push_back(std::move(whole));
    for (size_t i = 0; i < P.faces.size(); ++i) P.faces[i].id = static_cast<int>(i);
    P.index_faces();

    for (const auto& f : P.faces)
        if (f.proper && f.dimension == 0) P.vertices.push_back(f.supp_points.front());

    return P;
}

inline NewtonPolyhedron build_polyhedron(const PolySeries& f, int max_vars = 4) {
    if (f.is_zero()) throw HypothesisViolated("Newton polyhedron of the zero polynomial");
    return build_polyhedron(minimal_support(f), f.vars(), f.support(), max_vars);
}

inline Int m_value(const NewtonPolyhedron& P, const IVec& a) {
    for (const auto& x : a)
        if (x < 0) throw PreconditionViolated("m_value needs a nonnegative weight vector");
    return P.m_value(a);
}

inline Face first_meet_locus(const NewtonPolyhedron& P, const IVec& a) {
    for (const auto& x : a)
        if (x < 0) throw PreconditionViolated("first_meet_locus needs a nonnegative weight vector");
    return P.face_of(a);
}

inline const std::vector<Face>& enumerate_faces(const NewtonPolyhedron& P) { return P.faces; }

// Structural identity of polyhedra: same facet lists.
inline bool same_polyhedron(const NewtonPolyhedron& A, const NewtonPolyhedron& B) {
    if (A.n != B.n || A.facets.size() != B.facets.size()) return false;
    for (size_t i = 0; i < A.facets.size(); ++i)
        if (A.facets[i].normal != B.facets[i].normal || A.facets[i].offset != B.facets[i].offset)
            return false;
    return true;
}

namespace detail {

inline std::vector<std::vector<IVec>> cone_facet_sets(const std::vector<IVec>& rays, int d) {
    size_t n = rays.front().size();
    // Basis of span(rays).
    std::vector<IVec> basis;
    for (const auto& r : rays) {
        auto probe = basis;
        probe.push_back(r);
        if (linalg::rank_of_vectors(probe, n) > static_cast<int>(basis.size())) basis.push_back(r);
    }
    std::set<std::vector<IVec>> out;
    std::vector<size_t> idx(static_cast<size_t>(d - 1));
    std::function<void(size_t, size_t)> pick = [&](size_t pos, size_t start) {
        if (pos == idx.size()) {
            // u = sum z_i basis_i orthogonal to the chosen rays.
            std::vector<std::vector<Rat>> rows;
            for (size_t t : idx) {
                std::vector<Rat> row(basis.size());
                for (size_t bi = 0; bi < basis.size(); ++bi) row[bi] = Rat(dot(rays[t], basis[bi]));
                rows.push_back(std::move(row));
            }
            auto z = linalg::null_vector(rows);
            if (!z) return;
            std::vector<Rat> u(n, Rat(0));
            for (size_t bi = 0; bi < basis.size(); ++bi)
                for (size_t i = 0; i < n; ++i) u[i] += (*z)[bi] * Rat(basis[bi][i]);
            bool pos_side = false, neg_side = false;
            std::vector<IVec> on;
            for (const auto& r : rays) {
                Rat s(0);
                for (size_t i = 0; i < n; ++i) s += u[i] * Rat(r[i]);
                if (s > 0) pos_side = true;
                else if (s < 0) neg_side = true;
                else on.push_back(r);
            }
            if (pos_side && neg_side) return;
            if (linalg::rank_of_vectors(on, n) != d - 1) return;
            std::sort(on.begin(), on.end());
            out.insert(std::move(on));
            return;
        }
        for (size_t i = start; i < rays.size(); ++i) {
            idx[pos] = i;
            pick(pos + 1, i + 1);
        }
    };
    if (d >= 1 && rays.size() >= idx.size()) pick(0, 0);
    return {out.begin(), out.end()};
}

// Lexicographic pulling triangulation: star the lex-smallest ray over the
// facets avoiding it, recursively.
inline std::vector<std::vector<IVec>> triangulate_cone(std::vector<IVec> rays) {
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    size_t n = rays.front().size();
    int d = linalg::rank_of_vectors(rays, n);
    if (static_cast<int>(rays.size()) == d) return {rays};
    const IVec v = rays.front();
    std::vector<std::vector<IVec>> cells;
    for (const auto& facet : cone_facet_sets(rays, d)) {
        if (std::find(facet.begin(), facet.end(), v) != facet.end()) continue;
        for (auto cell : triangulate_cone(facet)) {
            cell.push_back(v);
            std::sort(cell.begin(), cell.end());
            cells.push_back(std::move(cell));
        }
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

// Lattice points of { sum lambda_j g_j : lambda_j in (0,1] }, by scanning
// the integer box below the generator sum.
inline std::vector<IVec> half_open_parallelepiped(const std::vector<IVec>& gens) {
    size_t n = gens.front().size();
    IVec box(n, 0);
    for (const auto& g : gens)
        for (size_t i = 0; i < n; ++i) box[i] += g[i];
    std::vector<IVec> points;
    IVec h(n, 0);
    std::function<void(size_t)> scan = [&](size_t i) {
        if (i == n) {
            std::vector<std::vector<Rat>> cols(n, std::vector<Rat>(gens.size()));
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < gens.size(); ++c) cols[r][c] = Rat(gens[c][r]);
            std::vector<Rat> rhs(n);
            for (size_t r = 0; r < n; ++r) rhs[r] = Rat(h[r]);
            auto lam = linalg::solve(cols, rhs);
            if (!lam) return;
            // Verify the candidate solves the system (solve() pins free
            // variables, but independent generators leave none).
            for (size_t r = 0; r < n; ++r) {
                Rat acc(0);
                for (size_t c = 0; c < gens.size(); ++c) acc += (*lam)[c] * Rat(gens[c][r]);
                if (acc != Rat(h[r])) return;
            }
            for (const auto& l : *lam)
                if (l <= 0 || l > 1) return;
            points.push_back(h);
            return;
        }
        for (Int x = 0; x <= box[i]; ++x) {
            h[i] = x;
            scan(i + 1);
        }
        h[i] = 0;
    };
    scan(0);
    std::sort(points.begin(), points.end());
    return points;
}

} // namespace detail

// The cone of a proper face: rays are the facet normals through the face;
// the relatively open cone decomposes into the relative interiors of the
// triangulation's faces that still first-meet at tau, each carried by its
// (0,1] parallelepiped lattice points.
inline Cone cone_of_face(const NewtonPolyhedron& P, const Face& tau) {
    if (!tau.proper) throw DegenerateFace("the whole polyhedron carries no cone");
    const Face* canonical = P.find_face(tau);
    if (!canonical) throw DegenerateFace("face is not a first meet locus of this polyhedron");

    Cone cone;
    cone.face_id = canonical->id;
    for (int j : canonical->facet_ids) cone.rays.push_back(P.facets[static_cast<size_t>(j)].normal);
    std::sort(cone.rays.begin(), cone.rays.end());
    cone.rays.erase(std::unique(cone.rays.begin(), cone.rays.end()), cone.rays.end());
    if (cone.rays.empty()) throw DegenerateFace("face lies on no facet");

    {
        IVec sum(static_cast<size_t>(P.n), 0);
        for (const auto& r : cone.rays)
            for (int i = 0; i < P.n; ++i) sum[static_cast<size_t>(i)] += r[static_cast<size_t>(i)];
        Face check = P.face_of(sum);
        if (check.key() != canonical->key())
            throw DegenerateFace("face is not the intersection of its facets");
    }

    auto cells = detail::triangulate_cone(cone.rays);
    std::set<std::vector<IVec>> complex_faces;
    for (const auto& cell : cells) {
        size_t k = cell.size();
        for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
            std::vector<IVec> sub;
            for (size_t j = 0; j < k; ++j)
                if (mask & (size_t{1} << j)) sub.push_back(cell[j]);
            complex_faces.insert(std::move(sub));
        }
    }
    for (const auto& g : complex_faces) {
        IVec w(static_cast<size_t>(P.n), 0);
        for (const auto& r : g)
            for (int i = 0; i < P.n; ++i) w[static_cast<size_t>(i)] += r[static_cast<size_t>(i)];
        Face probe = P.face_of(w);
        if (probe.key() != canonical->key()) continue;
        SimplicialPiece piece;
        piece.rays = g;
        piece.lattice_points = detail::half_open_parallelepiped(g);
        cone.pieces.push_back(std::move(piece));
    }
    return cone;
}

struct PartitionReport {
    bool pass = true;
    long points_checked = 0;
    std::vector<std::string> failures;
    std::map<int, long> per_face_counts;
};

// Check on the box |k| <= B that every nonzero lattice weight lies in
// exactly one cone and is claimed exactly once by its parallelepiped
// decomposition.
inline PartitionReport verify_partition(const NewtonPolyhedron& P, long B) {
    PartitionReport report;
    std::vector<std::pair<int, Cone>> cones;
    for (const auto& f : P.faces)
        if (f.proper) cones.emplace_back(f.id, cone_of_face(P, f));

    for_each_exponent(P.n, B, [&](const Exponent& k) {
        if (total_degree(k) == 0) return;
        ++report.points_checked;
        IVec kv(k.begin(), k.end());
        Face located = P.face_of(kv);
        int expected_face = located.id;
        int claims = 0;
        int claimed_face = -1;
        for (const auto& [fid, cone] : cones) {
            for (const auto& piece : cone.pieces) {
                for (const auto& h : piece.lattice_points) {
                    // k claimed iff k - h is a nonnegative integer combination
                    // of the piece rays.
                    std::vector<std::vector<Rat>> cols(static_cast<size_t>(P.n),
                                                       std::vector<Rat>(piece.rays.size()));
                    std::vector<Rat> rhs(static_cast<size_t>(P.n));
                    for (int r = 0; r < P.n; ++r) {
                        for (size_t c = 0; c < piece.rays.size(); ++c)
                            cols[static_cast<size_t>(r)][c] = Rat(piece.rays[c][static_cast<size_t>(r)]);
                        rhs[static_cast<size_t>(r)] = Rat(kv[static_cast<size_t>(r)] - h[static_cast<size_t>(r)]);
                    }
                    auto lam = linalg::solve(cols, rhs);
                    if (!lam) continue;
                    bool ok = true;
                    for (int r = 0; r < P.n && ok; ++r) {
                        Rat acc(0);
                        for (size_t c = 0; c < piece.rays.size(); ++c)
                            acc += (*lam)[c] * Rat(piece.rays[c][static_cast<size_t>(r)]);
                        ok = acc == rhs[static_cast<size_t>(r)];
                    }
                    for (const auto& l : *lam)
                        if (denominator(l) != 1 || l < 0) ok = false;
                    if (ok) {
                        ++claims;
                        claimed_face = fid;
                    }
                }
            }
        }
        if (claims != 1 || claimed_face != expected_face) {
            report.pass = false;
            std::string msg = "k = (";
            for (size_t i = 0; i < k.size(); ++i)
                msg += std::to_string(k[i]) + (i + 1 < k.size() ? "," : ")");
            msg += " claims=" + std::to_string(claims) +
                   " face=" + std::to_string(claimed_face) +
                   " expected=" + std::to_string(expected_face);
            report.failures.push_back(std::move(msg));
        } else {
            ++report.per_face_counts[claimed_face];
        }
    });
    return report;
}

} // namespace igusa
