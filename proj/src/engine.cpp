#include "toric/engine.hpp"

#include <algorithm>

namespace toric {

namespace {

LTPoly lminus1_pow(int k) {
    LTPoly base;
    base.insert_term(1, 0, 1);
    base.insert_term(0, 0, -1);
    LTPoly out = LTPoly::from_term(0, 0, 1);
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
}

LaurentPoly laurent_lminus1_pow(int k) {
    LaurentPoly base;
    base.insert_term(-1, 1); // L
    base.insert_term(0, -1); // -1
    LaurentPoly out = LaurentPoly::from_term(0, 1);
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
}

// one (k, tau) auxiliary piece
MotivicRational aux_piece(const LogJacobianLadder& l, int k, const Cone& tau,
                          Budget* budget) {
    const SemigroupData& s = *l.semigroup;
    int d = s.rank;
    Vec nu0 = interior_lattice_point(tau);
    PhiProfile pr = phi_profile(l, nu0);

    // linear representative of ord_{J_k} on tau
    Vec wk = zero_vec(static_cast<size_t>(d));
    for (int r = 0; r < k; ++r)
        wk = add(wk, s.generators[static_cast<size_t>(pr.greedy[static_cast<size_t>(r)])]);

    // hat cone: nu in tau, s >= phi_k(nu), and for k < d:
    // s + ord_{J_k}(nu) <= <nu, w> for every vertex w of N(J_{k+1})
    size_t n1 = static_cast<size_t>(d) + 1;
    auto lift = [&](const Vec& v, const Int& last) {
        Vec x = v;
        x.push_back(last);
        return x;
    };
    std::vector<Vec> ineqs, eqs;
    for (const Vec& f : tau.facets) ineqs.push_back(lift(f, 0));
    for (const Vec& e : tau.span_eqs) eqs.push_back(lift(e, 0));
    const Vec& eik = s.generators[static_cast<size_t>(pr.greedy[static_cast<size_t>(k) - 1])];
    ineqs.push_back(lift(neg(eik), 1)); // s - phi_k(nu) >= 0
    if (k < d) {
        for (const Vec& w : l.newton[static_cast<size_t>(k)].vertices)
            ineqs.push_back(lift(sub(w, wk), -1)); // <nu,w> - ord_k(nu) - s >= 0
    }
    Cone hat = cone_from_inequalities(ineqs, eqs, d + 1);
    if (hat.dim != tau.dim + 1)
        fail("InternalError", "hat cone dimension unexpected");

    // lower boundary: graph of phi_k over tau
    std::vector<Vec> lower_rays;
    for (const Vec& r : tau.rays) lower_rays.push_back(lift(r, dot(eik, r)));
    Cone lower = cone_from_rays(lower_rays, d + 1);

    // pi(nu, s) = (<nu, e_{i_1}>, ..., <nu, e_{i_k}>, s)
    Mat pi;
    for (int r = 0; r < k; ++r)
        pi.push_back(lift(s.generators[static_cast<size_t>(pr.greedy[static_cast<size_t>(r)])], 0));
    pi.push_back(lift(zero_vec(static_cast<size_t>(d)), 1));
    (void)n1;

    MultiGenFun fo = genfun_projection(make_projection(pi, hat), budget);
    MultiGenFun fl = genfun_projection(make_projection(pi, lower), budget);

    // zeta_*: x^a -> L^{k a_{k+1} - sum_r a_r} T^{a_{k+1}}
    std::vector<std::pair<long long, long long>> images;
    for (int r = 0; r < k; ++r) images.push_back({-1, 0});
    images.push_back({k, 1});
    MotivicRational piece = add(substitute_monomial(fo, images),
                                substitute_monomial(fl, images));
    return mul_poly(lminus1_pow(k), piece);
}

MotivicRational curve_closed_form(const SemigroupData& s) {
    // multiplicity of the monomial curve: the least generator (rank-1
    // rebased generators are positive scalars)
    Int m;
    bool first = true;
    for (const Vec& g : s.generators) {
        if (first || g[0] < m) {
            m = g[0];
            first = false;
        }
    }
    long long mm = static_cast<long long>(m);
    LTPoly num;
    num.insert_term(1, mm, 1);
    num.insert_term(0, mm, -1); // (L-1) T^m
    return make_rational(num, {{1, 1, 1}, {0, mm, 1}});
}

} // namespace

AuxSeriesReport p_aux(const SemigroupData& s, Budget* budget) {
    AuxSeriesReport rep;
    LogJacobianLadder l = log_jacobian_ladder(s);
    int d = s.rank;
    rep.candidate_poles = candidate_pole_set(l);
    for (int k = 1; k <= d; ++k) {
        for (const Cone& tau : dk_cones(l, k)) {
            AuxPiece piece;
            piece.k = k;
            piece.tau_rays = tau.rays;
            try {
                piece.value = aux_piece(l, k, tau, budget);
            } catch (Error& e) {
                if (e.code() == "KernelMeetsCone")
                    fail("KernelMeetsCone",
                         "k=" + std::to_string(k) + " tau=" + tau.key());
                throw;
            }
            rep.pieces.push_back(std::move(piece));
        }
    }
    MotivicRational total;
    for (const AuxPiece& p : rep.pieces) total = add(total, p.value);
    rep.total = normalize(total);

    if (d == 1) {
        // Both the general path and the curve closed form run; they must agree.
        MotivicRational closed = curve_closed_form(s);
        if (!equal_rational(rep.total, closed))
            fail("InternalError", "monomial curve closed form disagrees");
    }
    // every surviving denominator factor is a candidate pole
    for (const DenFactor& f : rep.total.den) {
        if (!rep.candidate_poles.count({Int(f.a), Int(f.b)}))
            fail("CandidatePoleViolation",
                 "factor (1 - L^" + std::to_string(f.a) + " T^" + std::to_string(f.b) +
                     ") outside B(Lambda)");
    }
    return rep;
}

LocalSeriesReport p_geom_local_report(const SemigroupData& s, Budget* budget) {
    LocalSeriesReport rep;
    MotivicRational total;
    for (const Cone& theta : face_lattice(s.sigma)) {
        MotivicRational piece;
        if (theta.dim == s.sigma.dim) {
            // jets of the constant arc: 1/(1-T)
            piece = make_rational(LTPoly::from_term(0, 0, 1), {{0, 1, 1}});
        } else if (theta.dim == 0) {
            piece = p_aux(s, budget).total;
        } else {
            FaceRestriction fr = face_restriction(s, theta, budget);
            piece = p_aux(fr.semigroup, budget).total;
        }
        total = add(total, piece);
        rep.face_pieces.push_back({theta.rays, std::move(piece)});
    }
    rep.total = normalize(total);
    return rep;
}

MotivicRational p_geom_local(const SemigroupData& s, Budget* budget) {
    return p_geom_local_report(s, budget).total;
}

VolumeReport motivic_volume(const SemigroupData& s, Budget* budget) {
    LogJacobianLadder l = log_jacobian_ladder(s);
    int d = s.rank;
    const NewtonData& nd = l.newton[static_cast<size_t>(d) - 1];

    // direct formula over the cells of Sigma_d meeting int(sigma)
    LaurentRational direct;
    for (const Cone& tau : nd.dual_fan.cones) {
        if (tau.dim == 0) continue;
        Vec nu0 = interior_lattice_point(tau);
        if (!s.sigma.contains_rel_interior(nu0)) continue;
        // ord_{J_d} is linear on tau; any face point represents it
        Vec wf = face_points(nd, nu0)[0];
        MultiGenFun f = genfun_interior(tau, budget);
        direct = laurent_add(direct, substitute_monomial_laurent(f, wf));
    }
    LaurentRational factor = laurent_make(laurent_lminus1_pow(d), {});
    direct = laurent_mul(factor, direct);

    VolumeReport rep;
    rep.direct = direct;
    rep.specialized = volume_specialize(p_geom_local(s, budget), d);
    if (!laurent_equal(rep.direct, rep.specialized))
        fail("VolumeMismatch", "direct and specialized volumes disagree");
    return rep;
}

std::vector<Vec> hilbert_basis(const Cone& c, Budget* budget) {
    if (!c.is_strictly_convex()) fail("NotStrictlyConvex", "Hilbert basis");
    if (c.dim == 0) return {};
    int n = c.ambient;
    Fan fan = simplicial_subdivision(c);
    std::set<Vec> candidates;
    for (const Cone* cell : fan.maximal()) {
        const std::vector<Vec>& vs = cell->rays;
        size_t m = vs.size();
        // closed parallelepiped lattice points (lambda in [0,1])
        Vec lo = zero_vec(static_cast<size_t>(n)), hi = lo;
        for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
            Vec corner = zero_vec(static_cast<size_t>(n));
            for (size_t i = 0; i < m; ++i)
                if (mask & (size_t(1) << i)) corner = add(corner, vs[i]);
            for (size_t j = 0; j < static_cast<size_t>(n); ++j) {
                if (mask == 0 || corner[j] < lo[j]) lo[j] = corner[j];
                if (mask == 0 || corner[j] > hi[j]) hi[j] = corner[j];
            }
        }
        Vec x = lo;
        for (;;) {
            charge(budget);
            auto lam = solve_row_combination(vs, x);
            if (lam) {
                bool ok = true;
                for (const Rat& t : *lam)
                    if (t < 0 || t > 1) ok = false;
                if (ok && !is_zero(x)) candidates.insert(x);
            }
            size_t i = static_cast<size_t>(n);
            bool adv = false;
            while (i > 0) {
                --i;
                if (x[i] < hi[i]) {
                    ++x[i];
                    for (size_t j = i + 1; j < static_cast<size_t>(n); ++j) x[j] = lo[j];
                    adv = true;
                    break;
                }
            }
            if (!adv) break;
        }
    }
    // keep the irreducible ones: h with no decomposition h = a + b, a,b != 0
    std::vector<Vec> basis;
    for (const Vec& h : candidates) {
        Polytope p;
        p.ambient = n;
        for (const Vec& f : c.facets) {
            p.ineqs.push_back({f, Int(0)});
            // h - a in the cone
            Vec nf = neg(f);
            p.ineqs.push_back({nf, -dot(f, h)});
        }
        bool reducible = false;
        for (const Vec& a : polytope_lattice_points(p, budget)) {
            if (is_zero(a) || a == h) continue;
            reducible = true;
            break;
        }
        if (!reducible) basis.push_back(h);
    }
    std::sort(basis.begin(), basis.end(), lex_less);
    return basis;
}

bool is_normal(const SemigroupData& s, Budget* budget) {
    for (const Vec& h : hilbert_basis(s.sigma_dual, budget))
        if (!semigroup_contains(s.generators, h, budget)) return false;
    return true;
}

GlobalSeriesReport p_geom_global_normal(const SemigroupData& s, Budget* budget) {
    if (!is_normal(s, budget)) fail("NotNormal", "global series needs a normal semigroup");
    int d = s.rank;
    GlobalSeriesReport rep;
    MotivicRational series;
    LaurentRational volume;
    for (const Cone& theta : face_lattice(s.sigma)) {
        int t = theta.dim;
        int codim = d - t;
        std::vector<Vec> gens;
        if (t == 0) {
            // Lambda(0) = Z_{>=0}^d
            for (int j = 0; j < d; ++j) {
                Vec e = zero_vec(static_cast<size_t>(d));
                e[static_cast<size_t>(j)] = 1;
                gens.push_back(e);
            }
        } else {
            // quotient M -> M / (theta^perp cap M)
            Mat perp = kernel_basis(theta.rays, d);
            Mat comp = complete_to_unimodular(perp, d);
            Mat full = perp;
            for (const Vec& r : comp) full.push_back(r);
            auto quotient = [&](const Vec& x) {
                auto co = solve_integer_row_combination(full, x);
                if (!co) fail("InternalError", "quotient coordinates failed");
                Vec q(static_cast<size_t>(t));
                for (int j = 0; j < t; ++j)
                    q[static_cast<size_t>(j)] = (*co)[perp.size() + static_cast<size_t>(j)];
                return q;
            };
            std::vector<Vec> image_rays;
            for (const Vec& r : s.sigma_dual.rays) image_rays.push_back(quotient(r));
            Cone image = cone_from_rays(image_rays, t);
            if (!image.is_strictly_convex())
                fail("InternalError", "quotient cone not pointed");
            std::vector<Vec> hb = hilbert_basis(image, budget);
            for (const Vec& h : hb) {
                Vec g = h;
                for (int j = 0; j < codim; ++j) g.push_back(0);
                gens.push_back(g);
            }
            for (int j = 0; j < codim; ++j) {
                Vec g = zero_vec(static_cast<size_t>(d));
                g[static_cast<size_t>(t) + static_cast<size_t>(j)] = 1;
                gens.push_back(g);
            }
        }
        SemigroupData local = build_semigroup(gens, d, budget);
        MotivicRational piece = mul_poly(lminus1_pow(codim), p_geom_local(local, budget));
        series = add(series, piece);
        VolumeReport vr = motivic_volume(local, budget);
        LaurentRational vpiece =
            laurent_mul(laurent_make(laurent_lminus1_pow(codim), {}), vr.specialized);
        volume = laurent_add(volume, vpiece);
    }
    rep.series = normalize(series);
    rep.volume = volume;
    return rep;
}

} // namespace toric
