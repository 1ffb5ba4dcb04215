#include "toric/semigroup.hpp"

#include <algorithm>
#include <map>

namespace toric {

namespace {

std::vector<Vec> dedup_nonzero(const std::vector<Vec>& raw) {
    std::vector<Vec> v;
    for (const Vec& x : raw)
        if (!is_zero(x)) v.push_back(x);
    std::sort(v.begin(), v.end(), lex_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// nonnegative integer solutions x of  sum_j x_j gens[j] = target
std::vector<Vec> combination_solutions(const std::vector<Vec>& gens, const Vec& target,
                                       Budget* budget) {
    size_t n = gens.size();
    size_t d = target.size();
    Polytope p;
    p.ambient = static_cast<int>(n);
    for (size_t j = 0; j < n; ++j) {
        Vec e = zero_vec(n);
        e[j] = 1;
        p.ineqs.push_back({e, Int(0)});
    }
    for (size_t i = 0; i < d; ++i) {
        Vec row(n);
        for (size_t j = 0; j < n; ++j) row[j] = gens[j][i];
        p.eqs.push_back({row, target[i]});
    }
    return polytope_lattice_points(p, budget);
}

} // namespace

bool semigroup_contains(const std::vector<Vec>& gens, const Vec& v, Budget* budget) {
    if (is_zero(v)) return true;
    return !combination_solutions(gens, v, budget).empty();
}

std::vector<Vec> minimalize_generators(const std::vector<Vec>& raw, Budget* budget) {
    std::vector<Vec> gens = dedup_nonzero(raw);
    if (gens.empty()) fail("EmptySemigroup", "no nonzero generators");
    int ambient = static_cast<int>(gens[0].size());
    Cone c = cone_from_rays(gens, ambient);
    if (!c.is_strictly_convex())
        fail("NotStrictlyConvex", "a positive combination of generators returns to 0");
    // e is a minimal generator iff it is not a sum of two nonzero elements,
    // i.e. no solution of sum x_j e_j = e with sum x_j >= 2.
    std::vector<Vec> keep;
    for (const Vec& e : gens) {
        bool reducible = false;
        for (const Vec& x : combination_solutions(gens, e, budget)) {
            Int total = 0;
            for (const Int& xi : x) total += xi;
            if (total >= 2) {
                reducible = true;
                break;
            }
        }
        if (!reducible) keep.push_back(e);
    }
    return keep;
}

SemigroupData build_semigroup(const std::vector<Vec>& raw, int rank, Budget* budget) {
    std::vector<Vec> cleaned = dedup_nonzero(raw);
    if (cleaned.empty()) fail("EmptySemigroup", "no nonzero generators");
    for (const Vec& g : cleaned)
        if (static_cast<int>(g.size()) != rank)
            fail("InternalError", "generator length does not match the declared rank");
    std::vector<Vec> minimal = minimalize_generators(cleaned, budget);

    SemigroupData s;
    s.original_generators = minimal;
    SublatticeBasis group = lattice_basis(minimal);
    s.rank = group.rank;
    s.rebase = group.basis;
    for (const Vec& g : minimal) {
        auto coords = group.coordinates(g);
        if (!coords) fail("InternalError", "generator not in its own group");
        s.generators.push_back(*coords);
    }
    std::sort(s.generators.begin(), s.generators.end(), lex_less);
    s.sigma_dual = cone_from_rays(s.generators, s.rank);
    if (!s.sigma_dual.is_strictly_convex())
        fail("NotStrictlyConvex", "R_{>=0} Lambda contains a line");
    if (s.sigma_dual.dim != s.rank)
        fail("InternalError", "sigma^vee not full dimensional after rebase");
    s.sigma = dual_cone(s.sigma_dual);
    return s;
}

LogJacobianLadder log_jacobian_ladder(const SemigroupData& s) {
    LogJacobianLadder l;
    l.semigroup = &s;
    int d = s.rank;
    size_t n = s.generators.size();
    // enumerate k-subsets with independent members
    for (int k = 1; k <= d; ++k) {
        std::vector<Vec> jk;
        std::vector<size_t> idx(static_cast<size_t>(k));
        // iterative combination enumeration
        std::vector<size_t> comb;
        for (size_t i = 0; i < static_cast<size_t>(k); ++i) comb.push_back(i);
        if (static_cast<size_t>(k) <= n) {
            for (;;) {
                Mat rows;
                for (size_t i : comb) rows.push_back(s.generators[i]);
                if (rank_of(rows) == k) {
                    Vec sum = zero_vec(d);
                    for (size_t i : comb) sum = add(sum, s.generators[i]);
                    jk.push_back(sum);
                }
                // next combination
                int pos = k - 1;
                while (pos >= 0 &&
                       comb[static_cast<size_t>(pos)] == n - static_cast<size_t>(k) +
                                                             static_cast<size_t>(pos))
                    --pos;
                if (pos < 0) break;
                ++comb[static_cast<size_t>(pos)];
                for (size_t i = static_cast<size_t>(pos) + 1; i < static_cast<size_t>(k); ++i)
                    comb[i] = comb[i - 1] + 1;
            }
        }
        std::sort(jk.begin(), jk.end(), lex_less);
        jk.erase(std::unique(jk.begin(), jk.end()), jk.end());
        if (jk.empty()) fail("InternalError", "J_k empty; generators do not span");
        l.ideals.push_back(jk);
        l.newton.push_back(newton_polyhedron(jk, s.sigma_dual));
        if (k == 1)
            l.refinements.push_back(l.newton.back().dual_fan);
        else
            l.refinements.push_back(
                common_refinement({l.refinements.back(), l.newton.back().dual_fan}));
    }
    return l;
}

PhiProfile phi_profile(const LogJacobianLadder& l, const Vec& nu) {
    const SemigroupData& s = *l.semigroup;
    if (!s.sigma.contains(nu))
        fail("OutsideSupport", "vector " + to_string(nu) + " outside sigma");
    int d = s.rank;
    size_t n = s.generators.size();
    PhiProfile pr;
    pr.nu = nu;
    // sort generator indices by (pairing, original index)
    std::vector<std::pair<Int, size_t>> order;
    for (size_t i = 0; i < n; ++i) order.push_back({dot(nu, s.generators[i]), i});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Mat chosen;
    Int running = 0;
    for (int k = 1; k <= d; ++k) {
        bool found = false;
        for (const auto& [val, i] : order) {
            if (std::find(pr.greedy.begin(), pr.greedy.end(), static_cast<int>(i)) !=
                pr.greedy.end())
                continue;
            Mat trial = chosen;
            trial.push_back(s.generators[i]);
            if (rank_of(trial) == k) {
                chosen = trial;
                pr.greedy.push_back(static_cast<int>(i));
                pr.phi.push_back(val);
                running += val;
                pr.ord.push_back(running);
                found = true;
                break;
            }
        }
        if (!found) fail("InternalError", "greedy selection failed");
        // greedy order value equals the Newton support value (eq. prepa)
        Int support = support_value(l.newton[static_cast<size_t>(k) - 1], nu);
        if (support != running)
            fail("InternalError", "greedy ord mismatch with Newton support value");
    }
    pr.psi.push_back(0);
    for (int k = 2; k <= d; ++k)
        pr.psi.push_back(Int(k - 1) * pr.ord_k(k) - Int(k) * pr.ord_k(k - 1));
    return pr;
}

std::set<std::pair<Int, Int>> candidate_pole_set(const LogJacobianLadder& l) {
    int d = l.dim();
    std::set<std::pair<Int, Int>> b;
    b.insert({Int(d), Int(1)});
    for (int k = 1; k <= d; ++k) {
        const Fan& fan = l.refinements[static_cast<size_t>(k) - 1];
        for (const Vec& ray : fan.rays()) {
            if (k < d && !l.semigroup->sigma.contains_rel_interior(ray)) continue;
            PhiProfile pr = phi_profile(l, ray);
            b.insert({pr.psi_k(k), pr.phi_k(k)});
        }
    }
    return b;
}

std::vector<Cone> dk_cones(const LogJacobianLadder& l, int k) {
    int d = l.dim();
    if (k < 1 || k > d) fail("InternalError", "dk_cones: k out of range");
    const Fan& fan = l.refinements[static_cast<size_t>(k) - 1];
    const NewtonData& nk = l.newton[static_cast<size_t>(k) - 1];
    std::vector<Cone> out;
    for (const Cone& tau : fan.cones) {
        if (tau.dim == 0) continue;
        Vec nu0 = interior_lattice_point(tau);
        // (a) all vertices of the face of N(J_k) at tau lie in int(sigma^vee)
        bool interior_face = true;
        for (const Vec& w : face_vertices(nk, nu0))
            if (!l.semigroup->sigma_dual.contains_rel_interior(w)) interior_face = false;
        if (!interior_face) continue;
        // (b) A_{k,tau} nonempty: nu0 interior to sigma and, for k < d,
        // phi_k < phi_{k+1} at nu0 (single-point dichotomy)
        if (!l.semigroup->sigma.contains_rel_interior(nu0)) continue;
        if (k < d) {
            PhiProfile pr = phi_profile(l, nu0);
            if (pr.phi_k(k) == pr.phi_k(k + 1)) continue;
        }
        out.push_back(tau);
    }
    return out;
}

FaceRestriction face_restriction(const SemigroupData& s, const Cone& theta,
                                 Budget* budget) {
    // theta must be a face of sigma
    bool is_face = false;
    for (const Cone& f : face_lattice(s.sigma))
        if (f.is_face_key_equal(theta)) is_face = true;
    if (!is_face) fail("NotAFace", "cone is not a face of sigma");

    FaceRestriction out;
    if (theta.dim == s.sigma.dim) {
        out.whole_face = true; // Lambda cap sigma^perp = {0}
        return out;
    }
    if (theta.dim == 0) {
        out.semigroup = s;
        out.index = 1;
        return out;
    }
    std::vector<Vec> picked;
    for (const Vec& e : s.generators) {
        bool orthogonal = true;
        for (const Vec& nu : theta.rays)
            if (dot(nu, e) != 0) orthogonal = false;
        if (orthogonal) picked.push_back(e);
    }
    if (picked.empty())
        fail("InternalError", "face restriction has no generators"); // cannot happen
    SublatticeBasis sub = lattice_basis(picked);
    out.index = sub.index;
    std::vector<Vec> coords;
    for (const Vec& e : picked) {
        auto c = sub.coordinates(e);
        if (!c) fail("InternalError", "restricted generator outside its lattice");
        coords.push_back(*c);
    }
    out.semigroup = build_semigroup(coords, sub.rank, budget);
    return out;
}

} // namespace toric
