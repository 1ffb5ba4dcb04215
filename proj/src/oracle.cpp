#include "toric/oracle.hpp"

#include <algorithm>
#include <map>

namespace toric {

namespace {

LPoly lminus1_pow_l(int k) {
    LPoly base;
    base.c = {Int(-1), Int(1)}; // L - 1
    LPoly out = LPoly::monomial(0, 1);
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
}

struct TupleData {
    Vec witness;        // lexicographically first
    Int max_phi_next;   // largest phi_{k+1} seen over the fiber (k < d)
};

} // namespace

std::vector<ClassTuple> oracle_classes(const SemigroupData& s, int order,
                                       Budget* budget) {
    LogJacobianLadder l = log_jacobian_ladder(s);
    int d = s.rank;
    std::vector<ClassTuple> out;
    for (int k = 1; k <= d; ++k) {
        const NewtonData& nk = l.newton[static_cast<size_t>(k) - 1];
        for (const Cone& tau : dk_cones(l, k)) {
            // fibers are compact only because ord_{J_k} > 0 on tau \ {0}
            for (const Vec& ray : tau.rays)
                if (support_value(nk, ray) <= 0)
                    fail("UnboundedFiber", "ord_{J_k} vanishes on a ray of tau");
            Vec nu0 = interior_lattice_point(tau);
            PhiProfile pr0 = phi_profile(l, nu0);
            Vec wk = zero_vec(static_cast<size_t>(d));
            for (int r = 0; r < k; ++r)
                wk = add(wk, s.generators[static_cast<size_t>(pr0.greedy[static_cast<size_t>(r)])]);
            // all witnesses with phi_k <= order live in ord_{J_k} <= k * order
            Polytope p;
            p.ambient = d;
            for (const Vec& f : tau.facets) p.ineqs.push_back({f, Int(0)});
            for (const Vec& e : tau.span_eqs) p.eqs.push_back({e, Int(0)});
            p.ineqs.push_back({neg(wk), Int(-k) * order});
            std::map<std::vector<Int>, TupleData> classes;
            for (const Vec& nu : polytope_lattice_points(p, budget)) {
                if (!tau.contains_rel_interior(nu)) continue;
                PhiProfile pr = phi_profile(l, nu);
                if (pr.phi_k(k) > order) continue;
                std::vector<Int> tuple(pr.phi.begin(),
                                       pr.phi.begin() + static_cast<size_t>(k));
                Int next = (k < d) ? pr.phi_k(k + 1) : Int(-1);
                auto it = classes.find(tuple);
                if (it == classes.end()) {
                    classes.emplace(tuple, TupleData{nu, next});
                } else {
                    if (k < d && next > it->second.max_phi_next)
                        it->second.max_phi_next = next;
                    if (lex_less(nu, it->second.witness)) it->second.witness = nu;
                }
            }
            for (const auto& [tuple, data] : classes) {
                if (k < d && data.max_phi_next == tuple.back()) continue; // no valid s
                ClassTuple ct;
                ct.k = k;
                ct.tau_rays = tau.rays;
                ct.a = tuple;
                ct.witness = data.witness;
                ct.phi_next = (k < d) ? data.max_phi_next : Int(-1);
                out.push_back(std::move(ct));
            }
        }
    }
    return out;
}

std::vector<LPoly> oracle_aux_coefficients(const SemigroupData& s, int order,
                                           Budget* budget) {
    std::vector<LPoly> coeffs(static_cast<size_t>(order) + 1);
    for (const ClassTuple& ct : oracle_classes(s, order, budget)) {
        Int ordk = 0;
        for (const Int& a : ct.a) ordk += a;
        Int lo = ct.a.back();
        Int hi = order;
        if (ct.k < s.rank) {
            Int cap = ct.phi_next - 1;
            if (cap < hi) hi = cap;
        }
        LPoly weight = lminus1_pow_l(ct.k);
        for (Int sv = lo; sv <= hi; ++sv) {
            long long lexp = static_cast<long long>(Int(ct.k) * sv - ordk);
            coeffs[static_cast<size_t>(sv)] += weight * LPoly::monomial(lexp, 1);
        }
    }
    return coeffs;
}

std::vector<LPoly> oracle_local_coefficients(const SemigroupData& s, int order,
                                             Budget* budget) {
    std::vector<LPoly> coeffs(static_cast<size_t>(order) + 1);
    for (const Cone& theta : face_lattice(s.sigma)) {
        if (theta.dim == s.sigma.dim) {
            for (auto& c : coeffs) c += LPoly::one(); // the constant jet
        } else if (theta.dim == 0) {
            auto aux = oracle_aux_coefficients(s, order, budget);
            for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += aux[i];
        } else {
            FaceRestriction fr = face_restriction(s, theta, budget);
            auto aux = oracle_aux_coefficients(fr.semigroup, order, budget);
            for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += aux[i];
        }
    }
    return coeffs;
}

CompareReport compare(const SemigroupData& s, int order, Budget* budget) {
    CompareReport rep;
    rep.engine = expand(p_geom_local(s, budget), order);
    rep.oracle = oracle_local_coefficients(s, order, budget);
    for (int i = 0; i <= order; ++i) {
        if (rep.engine[static_cast<size_t>(i)] == rep.oracle[static_cast<size_t>(i)]) continue;
        rep.all_equal = false;
        rep.first_mismatch = i;
        break;
    }
    return rep;
}

} // namespace toric
