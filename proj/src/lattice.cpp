#include "nhpoly/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nhpoly/errors.hpp"

namespace nhpoly {

namespace detail {

int rank_of(std::vector<std::vector<Rat>> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Rat f = rows[i][c] / rows[r][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b) {
    const size_t n = a.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            Rat f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    std::vector<Rat> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

} // namespace detail

namespace {

Rat dot(const std::vector<Rat>& a, const LatticePoint& u) {
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(u[i]);
    return s;
}

bool rat_vec_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

/// Kernel of a (rows x n) rational matrix; basis vectors of the nullspace.
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> m, int n) {
    size_t r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < n && r < m.size(); ++c) {
        size_t piv = r;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        Rat lead = m[r][c];
        for (int j = 0; j < n; ++j) m[r][j] /= lead;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rat f = m[i][c];
            for (int j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(n);
        v[free] = Rat(1);
        for (size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Scale a rational vector to a primitive integer vector.
std::vector<Rat> primitive(const std::vector<Rat>& v) {
    i64 l = 1;
    for (const Rat& x : v) l = lcm_i64(l, x.den());
    i64 g = 0;
    std::vector<i64> ints(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ints[i] = (v[i] * Rat(l)).num();
        g = gcd_i64(g, ints[i]);
    }
    std::vector<Rat> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(g ? ints[i] / g : 0);
    return out;
}

void subsets_rec(int start, int k, int limit, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i + k <= limit; ++i) {
        cur.push_back(i);
        subsets_rec(i + 1, k - 1, limit, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(int limit, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(0, k, limit, cur, out);
    return out;
}

i64 int_det(std::vector<std::vector<i64>> m) {
    // Bareiss fraction-free elimination; entries stay exact.
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (int c = 0; c < n - 1; ++c) {
        if (a[c][c] == 0) {
            int piv = -1;
            for (int i = c + 1; i < n; ++i)
                if (a[i][c] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[c], a[piv]);
            sign = -sign;
        }
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j < n; ++j)
                a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    __int128 d = a[n - 1][n - 1] * sign;
    if (d > INT64_MAX || d < INT64_MIN)
        throw ArithmeticOverflow("determinant exceeds 64-bit range");
    return static_cast<i64>(d);
}

bool facet_active(const Polytope& poly, int facet_id, const LatticePoint& u) {
    const Facet& f = poly.facets[facet_id];
    Rat v = dot(f.normal, u);
    return f.kind == FacetKind::NotThroughOrigin ? v == Rat(1) : v.is_zero();
}

} // namespace

Polytope hull_facets(const std::vector<LatticePoint>& support, int n) {
    if (n < 1 || n > 6)
        throw DimensionTooLarge("hull_facets supports 1 <= n <= 6, got n=" +
                                std::to_string(n));
    std::set<LatticePoint> pset(support.begin(), support.end());
    for (const auto& v : pset)
        if (static_cast<int>(v.size()) != n)
            throw InvalidSpec("support point dimension mismatch");
    pset.insert(LatticePoint(n, 0));
    std::vector<LatticePoint> pts(pset.begin(), pset.end());
    const int np = static_cast<int>(pts.size());

    {
        std::vector<std::vector<Rat>> rows;
        for (const auto& v : pts) {
            std::vector<Rat> row(n);
            for (int i = 0; i < n; ++i) row[i] = Rat(v[i]);
            rows.push_back(std::move(row));
        }
        if (detail::rank_of(rows) < n)
            throw DegeneratePolytope("support and origin span a proper subspace");
    }

    std::vector<Facet> facets;
    std::set<std::vector<std::pair<i64, i64>>> seen;
    auto key_of = [](const std::vector<Rat>& v) {
        std::vector<std::pair<i64, i64>> k;
        for (const Rat& x : v) k.emplace_back(x.num(), x.den());
        return k;
    };

    // Not-through-origin facets: every n-subset whose <a,v>=1 system is
    // uniquely solvable and whose hyperplane supports all points.
    for (const auto& idx : subsets(np, n)) {
        std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
        std::vector<Rat> b(n, Rat(1));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a[r][c] = Rat(pts[idx[r]][c]);
        auto sol = detail::solve_square(a, b);
        if (!sol) continue;
        bool ok = true;
        for (const auto& u : pts) {
            if (dot(*sol, u) > Rat(1)) { ok = false; break; }
        }
        if (!ok) continue;
        auto key = key_of(*sol);
        if (seen.insert(key).second)
            facets.push_back(Facet{*sol, FacetKind::NotThroughOrigin});
    }

    // Through-origin facets: (n-1)-subsets of nonzero points whose span
    // with the origin has a one-dimensional normal space.
    std::vector<int> nonzero;
    for (int i = 0; i < np; ++i) {
        bool z = true;
        for (i64 c : pts[i]) z = z && c == 0;
        if (!z) nonzero.push_back(i);
    }
    for (const auto& sub : subsets(static_cast<int>(nonzero.size()), n - 1)) {
        std::vector<std::vector<Rat>> m;
        for (int s : sub) {
            std::vector<Rat> row(n);
            for (int c = 0; c < n; ++c) row[c] = Rat(pts[nonzero[s]][c]);
            m.push_back(std::move(row));
        }
        auto basis = nullspace(m, n);
        if (basis.size() != 1) continue;
        std::vector<Rat> nrm = primitive(basis[0]);
        int pos = 0, neg = 0;
        for (const auto& u : pts) {
            Rat v = dot(nrm, u);
            if (v > Rat(0)) ++pos;
            if (v < Rat(0)) ++neg;
        }
        if (pos > 0 && neg > 0) continue;
        if (pos == 0 && neg == 0) continue; // all points on the hyperplane: degenerate
        if (pos == 0)
            for (Rat& x : nrm) x = -x;
        auto key = key_of(nrm);
        if (seen.insert(key).second)
            facets.push_back(Facet{nrm, FacetKind::ThroughOrigin});
    }

    std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
        return rat_vec_less(x.normal, y.normal);
    });

    Polytope poly;
    poly.dim = n;
    poly.facets = std::move(facets);

    // A point is a vertex exactly when its active facet normals span R^n.
    for (const auto& u : pts) {
        std::vector<std::vector<Rat>> active;
        for (const Facet& f : poly.facets) {
            Rat v = dot(f.normal, u);
            bool on = f.kind == FacetKind::NotThroughOrigin ? v == Rat(1)
                                                            : v.is_zero();
            if (on) active.push_back(f.normal);
        }
        if (detail::rank_of(active) == n) poly.vertices.push_back(u);
    }
    std::sort(poly.vertices.begin(), poly.vertices.end());
    return poly;
}

Weight weight(const Polytope& poly, const LatticePoint& u) {
    Rat best(0);
    for (const Facet& f : poly.facets) {
        Rat v = dot(f.normal, u);
        if (f.kind == FacetKind::ThroughOrigin) {
            if (v < Rat(0)) return Weight::infinite();
        } else if (v > best) {
            best = v;
        }
    }
    return Weight::finite(best);
}

bool cone_contains(const Polytope& poly, const LatticePoint& u) {
    return weight(poly, u).is_finite();
}

i64 denominator(const Polytope& poly) {
    i64 d = 1;
    for (const Facet& f : poly.facets) {
        if (f.kind != FacetKind::NotThroughOrigin) continue;
        for (const Rat& c : f.normal) d = lcm_i64(d, c.den());
    }
    return d;
}

std::vector<Face> enumerate_faces(const Polytope& poly) {
    const int n = poly.dim;
    const int nv = static_cast<int>(poly.vertices.size());
    const int nf = static_cast<int>(poly.facets.size());

    std::vector<std::vector<int>> facet_verts(nf);
    for (int f = 0; f < nf; ++f)
        for (int v = 0; v < nv; ++v)
            if (facet_active(poly, f, poly.vertices[v]))
                facet_verts[f].push_back(v);

    // Closure of facet vertex sets under pairwise intersection gives every
    // proper face.
    std::set<std::vector<int>> sets(facet_verts.begin(), facet_verts.end());
    sets.erase(std::vector<int>{});
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> snapshot(sets.begin(), sets.end());
        for (const auto& s : snapshot) {
            for (int f = 0; f < nf; ++f) {
                std::vector<int> inter;
                std::set_intersection(s.begin(), s.end(), facet_verts[f].begin(),
                                      facet_verts[f].end(),
                                      std::back_inserter(inter));
                if (!inter.empty() && sets.insert(inter).second) grew = true;
            }
        }
    }

    std::vector<Face> faces;
    for (const auto& vs : sets) {
        Face face;
        face.vertex_ids = vs;
        for (int f = 0; f < nf; ++f) {
            bool all = true;
            for (int v : vs)
                if (!facet_active(poly, f, poly.vertices[v])) { all = false; break; }
            if (all) face.facet_ids.push_back(f);
        }
        std::vector<std::vector<Rat>> dirs;
        const LatticePoint& v0 = poly.vertices[vs[0]];
        for (size_t i = 1; i < vs.size(); ++i) {
            std::vector<Rat> d(n);
            for (int c = 0; c < n; ++c)
                d[c] = Rat(poly.vertices[vs[i]][c] - v0[c]);
            dirs.push_back(std::move(d));
        }
        face.dim = detail::rank_of(dirs);
        face.contains_origin = true;
        for (int f : face.facet_ids)
            if (poly.facets[f].kind == FacetKind::NotThroughOrigin)
                face.contains_origin = false;
        faces.push_back(std::move(face));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertex_ids < b.vertex_ids;
    });
    return faces;
}

bool face_contains(const Polytope& poly, const Face& face, const LatticePoint& u) {
    for (size_t f = 0; f < poly.facets.size(); ++f) {
        Rat v = dot(poly.facets[f].normal, u);
        if (poly.facets[f].kind == FacetKind::NotThroughOrigin) {
            if (v > Rat(1)) return false;
        } else {
            if (v < Rat(0)) return false;
        }
    }
    for (int f : face.facet_ids)
        if (!facet_active(poly, f, u)) return false;
    return true;
}

namespace {

using Simplex = std::vector<int>;

/// Pulling triangulation of a face, recursing through the face lattice.
const std::vector<Simplex>& triangulate_face(
    const Polytope& poly, const std::vector<Face>& faces, int face_id,
    std::map<int, std::vector<Simplex>>& memo) {
    auto it = memo.find(face_id);
    if (it != memo.end()) return it->second;
    const Face& face = faces[face_id];
    std::vector<Simplex> out;
    if (face.dim == 0) {
        out.push_back({face.vertex_ids[0]});
    } else {
        int apex = face.vertex_ids[0];
        for (size_t g = 0; g < faces.size(); ++g) {
            const Face& child = faces[g];
            if (child.dim != face.dim - 1) continue;
            if (!std::includes(face.vertex_ids.begin(), face.vertex_ids.end(),
                               child.vertex_ids.begin(), child.vertex_ids.end()))
                continue;
            if (std::binary_search(child.vertex_ids.begin(),
                                   child.vertex_ids.end(), apex))
                continue;
            for (const Simplex& s :
                 triangulate_face(poly, faces, static_cast<int>(g), memo)) {
                Simplex t = s;
                t.push_back(apex);
                out.push_back(std::move(t));
            }
        }
    }
    return memo.emplace(face_id, std::move(out)).first->second;
}

} // namespace

i64 normalized_volume(const Polytope& poly) {
    const int n = poly.dim;
    auto faces = enumerate_faces(poly);
    std::map<int, std::vector<Simplex>> memo;
    i64 total = 0;
    for (size_t fid = 0; fid < faces.size(); ++fid) {
        const Face& face = faces[fid];
        // Faces of dimension n-1 are exactly the hull facets; cones from the
        // origin over through-origin facets are flat and contribute nothing.
        if (face.dim != n - 1 || face.contains_origin) continue;
        for (const Simplex& s : triangulate_face(poly, faces, (int)fid, memo)) {
            std::vector<std::vector<i64>> m(n, std::vector<i64>(n));
            for (int col = 0; col < n; ++col)
                for (int row = 0; row < n; ++row)
                    m[row][col] = poly.vertices[s[col]][row];
            i64 d = int_det(m);
            total += d < 0 ? -d : d;
        }
    }
    if (total <= 0) throw DegeneratePolytope("polytope has zero volume");
    return total;
}

} // namespace nhpoly
