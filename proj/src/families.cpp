#include "nhpoly/families.hpp"

#include <algorithm>
#include <numeric>

#include "nhpoly/errors.hpp"
#include "nhpoly/intmath.hpp"

namespace nhpoly {

std::string kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Diagonal: return "D";
        case FamilyKind::Reflection: return "G";
        case FamilyKind::Kloosterman: return "K";
    }
    return "?";
}

LaurentPoly build(const FamilySpec& spec) {
    const int n = spec.n;
    if (n < 1 || static_cast<int>(spec.m.size()) != n)
        throw InvalidSpec("family needs n >= 1 and |m| = n");
    for (i64 mi : spec.m)
        if (mi < 1) throw InvalidSpec("family exponents must be positive");
    if (spec.kind == FamilyKind::Diagonal) {
        if (spec.j != 0) throw InvalidSpec("diagonal family has j = 0");
    } else {
        if (spec.j < 1 || spec.j > n)
            throw InvalidSpec("reflection/Kloosterman family needs 1 <= j <= n");
    }

    std::vector<LatticePoint> support;
    for (int i = 0; i < n; ++i) {
        LatticePoint e(n, 0);
        e[i] = spec.m[i];
        support.push_back(std::move(e));
    }
    if (spec.kind == FamilyKind::Reflection) {
        for (int i = 0; i < spec.j; ++i) {
            LatticePoint e(n, 0);
            e[i] = -spec.m[i];
            support.push_back(std::move(e));
        }
    } else if (spec.kind == FamilyKind::Kloosterman) {
        LatticePoint e(n, 0);
        for (int i = 0; i < spec.j; ++i) e[i] = -1;
        support.push_back(std::move(e));
    }

    for (const auto& [pt, digits] : spec.coeffs) {
        if (std::find(support.begin(), support.end(), pt) == support.end())
            throw InvalidSpec("coefficient key is not a support point");
        (void)digits;
    }

    LaurentPoly f;
    f.n = n;
    for (auto& pt : support) {
        LaurentTerm t;
        auto it = spec.coeffs.find(pt);
        t.coef_digits = it == spec.coeffs.end() ? std::vector<i64>{1} : it->second;
        t.exp = std::move(pt);
        f.terms.push_back(std::move(t));
    }
    return f;
}

i64 dstar(const FamilySpec& spec) { return lcm_of(spec.m); }

bool nondegenerate_criterion(const FamilySpec& spec, i64 p) {
    if (!is_prime_i64(p)) throw NotPrime(std::to_string(p) + " is not prime");
    return dstar(spec) % p != 0;
}

Expected ordinarity_expectation(const FamilySpec& spec, i64 p) {
    if (!nondegenerate_criterion(spec, p))
        throw DegeneratePrime("p divides D*; the family member is degenerate");
    return p % dstar(spec) == 1 ? Expected::NPequalsHP : Expected::NPstrictlyAbove;
}

namespace {

struct FacePoly {
    std::vector<LatticePoint> vertices;
    std::vector<int> term_ids; // terms of f supported on the face
    int dim = 0;
};

} // namespace

std::optional<Witness> nondegeneracy_falsifier(const LaurentPoly& f, i64 p,
                                               int r_max,
                                               const FalsifierConfig& cfg) {
    if (r_max < 1) throw InvalidSpec("r_max must be at least 1");
    Polytope poly = hull_facets(f.support(), f.n);
    auto faces = enumerate_faces(poly);

    // closed faces not containing the origin, largest dimension first
    std::vector<FacePoly> targets;
    for (const auto& face : faces) {
        if (face.contains_origin) continue;
        FacePoly fp;
        fp.dim = face.dim;
        for (int vid : face.vertex_ids) fp.vertices.push_back(poly.vertices[vid]);
        for (size_t t = 0; t < f.terms.size(); ++t)
            if (face_contains(poly, face, f.terms[t].exp))
                fp.term_ids.push_back((int)t);
        targets.push_back(std::move(fp));
    }
    std::stable_sort(targets.begin(), targets.end(),
                     [](const FacePoly& a, const FacePoly& b) {
                         return a.dim > b.dim;
                     });

    for (const auto& t : f.terms)
        if (t.coef_digits.size() != 1)
            throw InvalidSpec("falsifier supports prime-field coefficients");

    const int n = f.n;
    for (int r = 1; r <= r_max; ++r) {
        FieldConfig fc;
        fc.field_budget = cfg.field_budget;
        fc.table_budget = cfg.table_budget;
        FieldCtx ctx = field_create(p, r, fc);
        const i64 q = ctx.q;
        double points = std::pow(double(q - 1), n);
        if (points > cfg.point_budget)
            throw BudgetExceeded("falsifier torus too large at r = " +
                                 std::to_string(r));
        for (const FacePoly& face : targets) {
            if (face.term_ids.empty()) continue;
            // x_i * d/dx_i of the face restriction keeps the monomials and
            // scales each by coef * exponent mod p
            std::vector<std::vector<i64>> exps;
            for (int t : face.term_ids) exps.push_back(f.terms[t].exp);
            std::vector<std::vector<felt>> scaled(n);
            for (int i = 0; i < n; ++i) {
                for (int t : face.term_ids) {
                    const auto& term = f.terms[t];
                    felt coef = ctx.from_int(term.coef_digits[0]);
                    if (coef == 0)
                        throw InvalidSpec("zero coefficient in polynomial");
                    scaled[i].push_back(
                        ctx.mul(coef, ctx.from_int(term.exp[i] % p)));
                }
            }
            // enumerate torus points in dense lexicographic order
            std::vector<felt> x(n, 1);
            const i64 L = q - 1;
            std::vector<i64> idx(n, 0); // dense value = idx + 1
            while (true) {
                for (int i = 0; i < n; ++i) x[i] = (felt)(idx[i] + 1);
                bool all_zero = true;
                // monomial values shared across partials
                std::vector<felt> mono(exps.size());
                for (size_t t = 0; t < exps.size(); ++t) {
                    felt v = 1;
                    for (int i = 0; i < n; ++i)
                        v = ctx.mul(v, ctx.pow(x[i], exps[t][i]));
                    mono[t] = v;
                }
                for (int i = 0; i < n && all_zero; ++i) {
                    felt s = 0;
                    for (size_t t = 0; t < exps.size(); ++t)
                        s = ctx.add(s, ctx.mul(scaled[i][t], mono[t]));
                    if (s != 0) all_zero = false;
                }
                if (all_zero) {
                    Witness w;
                    w.face_vertices = face.vertices;
                    w.r = r;
                    for (felt xv : x) w.point.push_back(ctx.to_element(xv));
                    return w;
                }
                int axis = n - 1;
                while (axis >= 0 && idx[axis] == L - 1) {
                    idx[axis] = 0;
                    --axis;
                }
                if (axis < 0) break;
                ++idx[axis];
            }
        }
    }
    return std::nullopt;
}

} // namespace nhpoly
