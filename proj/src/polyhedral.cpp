#include "toric/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

std::vector<Vec> sorted_unique(std::vector<Vec> v) {
    std::sort(v.begin(), v.end(), lex_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Extreme rays and lineality of { x : <a,x> >= 0 for a in ineqs,
//                                     <e,x> = 0 for e in eqs }.
// Incremental double description on the pointed quotient.
struct DDResult {
    Mat lineality;
    std::vector<Vec> rays;
};

DDResult dd_from_inequalities(const std::vector<Vec>& ineqs,
                              const std::vector<Vec>& eqs, int ambient) {
    DDResult out;
    Mat stacked = ineqs;
    for (const Vec& e : eqs) stacked.push_back(e);
    out.lineality = kernel_basis(stacked, ambient);
    size_t l = out.lineality.size();
    size_t n = static_cast<size_t>(ambient);
    size_t m = n - l;
    if (m == 0) return out; // whole space is lineality

    Mat comp = complete_to_unimodular(out.lineality, ambient);
    // reduced functional: a'_j = <a, comp_j>
    auto reduce = [&](const Vec& a) {
        Vec r(m);
        for (size_t j = 0; j < m; ++j) r[j] = dot(a, comp[j]);
        return r;
    };
    std::vector<Vec> rows;
    for (const Vec& a : ineqs) rows.push_back(reduce(a));
    for (const Vec& e : eqs) {
        rows.push_back(reduce(e));
        rows.push_back(neg(rows.back()));
    }
    // drop zero rows
    std::vector<Vec> work;
    for (auto& r : rows)
        if (!is_zero(r)) work.push_back(r);

    // initial simplicial system: m independent rows
    std::vector<size_t> init;
    Mat chosen;
    for (size_t i = 0; i < work.size() && init.size() < m; ++i) {
        Mat trial = chosen;
        trial.push_back(work[i]);
        if (rank_of(trial) == static_cast<int>(trial.size())) {
            chosen = trial;
            init.push_back(i);
        }
    }
    if (init.size() != m) fail("InternalError", "double description: rank deficit");

    // rays of {b : chosen_i . b >= 0}: solve chosen * R = I columnwise
    std::vector<Vec> rays;
    for (size_t j = 0; j < m; ++j) {
        Vec rhs = zero_vec(m);
        rhs[j] = 1;
        // solve chosen^T-free: find b with chosen_i . b = delta_ij (rational),
        // i.e. b solves the linear system; scale to integer primitive.
        // Use solve_row_combination on the transpose view.
        Mat cols(m, Vec(m));
        for (size_t i = 0; i < m; ++i)
            for (size_t k = 0; k < m; ++k) cols[i][k] = chosen[k][i];
        auto sol = solve_row_combination(cols, rhs);
        if (!sol) fail("InternalError", "double description: singular start");
        // clear denominators
        Int lcm = 1;
        for (const Rat& q : *sol) {
            Int den = denominator(q);
            lcm = lcm / gcd(lcm, den) * den;
        }
        Vec b(m);
        for (size_t k = 0; k < m; ++k) {
            Rat v = (*sol)[k] * Rat(lcm);
            b[k] = numerator(v);
        }
        rays.push_back(primitive(b));
    }

    std::vector<Vec> processed;
    for (size_t i : init) processed.push_back(work[i]);

    auto tight_set = [&](const Vec& ray) {
        std::vector<char> t(processed.size());
        for (size_t i = 0; i < processed.size(); ++i)
            t[i] = (dot(processed[i], ray) == 0);
        return t;
    };

    for (size_t i = 0; i < work.size(); ++i) {
        if (std::find(init.begin(), init.end(), i) != init.end()) continue;
        const Vec& a = work[i];
        std::vector<Vec> pos, zero, negs;
        for (const Vec& r : rays) {
            Int v = dot(a, r);
            if (v > 0)
                pos.push_back(r);
            else if (v == 0)
                zero.push_back(r);
            else
                negs.push_back(r);
        }
        if (negs.empty()) {
            processed.push_back(a);
            continue;
        }
        std::vector<std::vector<char>> tights;
        for (const Vec& r : rays) tights.push_back(tight_set(r));
        auto tight_of = [&](const Vec& r) {
            for (size_t k = 0; k < rays.size(); ++k)
                if (rays[k] == r) return tights[k];
            return std::vector<char>{};
        };
        std::vector<Vec> fresh;
        for (const Vec& p : pos) {
            auto tp = tight_of(p);
            for (const Vec& q : negs) {
                auto tq = tight_of(q);
                std::vector<char> common(processed.size());
                for (size_t k = 0; k < processed.size(); ++k)
                    common[k] = tp[k] && tq[k];
                // adjacency: no third ray is tight on all common constraints
                bool adjacent = true;
                for (size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (rays[k] == p || rays[k] == q) continue;
                    bool covers = true;
                    for (size_t c = 0; c < processed.size() && covers; ++c)
                        if (common[c] && !tights[k][c]) covers = false;
                    if (covers) adjacent = false;
                }
                if (!adjacent) continue;
                Vec w = combine(dot(a, p), q, -dot(a, q), p);
                if (!is_zero(w)) fresh.push_back(primitive(w));
            }
        }
        rays = zero;
        rays.insert(rays.end(), pos.begin(), pos.end());
        for (auto& w : fresh) rays.push_back(w);
        rays = sorted_unique(rays);
        processed.push_back(a);
    }

    // map rays back to ambient coordinates
    for (const Vec& b : rays) {
        Vec x = zero_vec(n);
        for (size_t j = 0; j < m; ++j)
            for (size_t k = 0; k < n; ++k) x[k] += b[j] * comp[j][k];
        out.rays.push_back(primitive(x));
    }
    out.rays = sorted_unique(out.rays);
    return out;
}

// facet/span data of cone(rays (+/- lineality)) from the dual side
void fill_facets(Cone& c) {
    DDResult dual = dd_from_inequalities(c.rays, c.lineality, c.ambient);
    c.facets = dual.rays;
    c.span_eqs = dual.lineality;
    Mat all = c.lineality;
    for (const Vec& r : c.rays) all.push_back(r);
    c.dim = rank_of(all);
}

} // namespace

bool Cone::contains(const Vec& v) const {
    for (const Vec& e : span_eqs)
        if (dot(e, v) != 0) return false;
    for (const Vec& f : facets)
        if (dot(f, v) < 0) return false;
    return true;
}

bool Cone::contains_rel_interior(const Vec& v) const {
    for (const Vec& e : span_eqs)
        if (dot(e, v) != 0) return false;
    for (const Vec& f : facets)
        if (dot(f, v) <= 0) return false;
    return true;
}

std::string Cone::key() const {
    std::string s = std::to_string(dim) + "|";
    for (const Vec& r : rays) s += to_string(r);
    s += "|";
    for (const Vec& l : lineality) s += to_string(l);
    return s;
}

bool Cone::is_face_key_equal(const Cone& o) const { return key() == o.key(); }

Cone cone_from_rays(const std::vector<Vec>& rays, int ambient) {
    Cone c;
    c.ambient = ambient;
    std::vector<Vec> prim;
    for (const Vec& r : rays)
        if (!is_zero(r)) prim.push_back(primitive(r));
    prim = sorted_unique(prim);
    // dual description first, then recover canonical extreme rays
    DDResult dual = dd_from_inequalities(prim, {}, ambient);
    DDResult back = dd_from_inequalities(dual.rays, dual.lineality, ambient);
    c.rays = back.rays;
    c.lineality = back.lineality;
    c.facets = dual.rays;
    c.span_eqs = dual.lineality;
    Mat all = c.lineality;
    for (const Vec& r : c.rays) all.push_back(r);
    c.dim = rank_of(all);
    return c;
}

Cone cone_from_inequalities(const std::vector<Vec>& ineqs,
                            const std::vector<Vec>& eqs, int ambient) {
    Cone c;
    c.ambient = ambient;
    DDResult prim = dd_from_inequalities(ineqs, eqs, ambient);
    c.rays = prim.rays;
    c.lineality = prim.lineality;
    fill_facets(c);
    return c;
}

Cone dual_cone(const Cone& c) {
    return cone_from_inequalities(c.rays, c.lineality, c.ambient);
}

Cone intersect_cones(const Cone& a, const Cone& b) {
    std::vector<Vec> ineqs = a.facets;
    ineqs.insert(ineqs.end(), b.facets.begin(), b.facets.end());
    std::vector<Vec> eqs = a.span_eqs;
    eqs.insert(eqs.end(), b.span_eqs.begin(), b.span_eqs.end());
    return cone_from_inequalities(ineqs, eqs, a.ambient);
}

std::vector<Cone> face_lattice(const Cone& c) {
    if (!c.is_strictly_convex())
        fail("NotStrictlyConvex", "face lattice requires a pointed cone");
    std::map<std::string, Cone> seen;
    std::vector<std::vector<Vec>> queue;
    queue.push_back(c.rays);
    while (!queue.empty()) {
        std::vector<Vec> rayset = queue.back();
        queue.pop_back();
        Cone f = cone_from_rays(rayset, c.ambient);
        if (seen.count(f.key())) continue;
        seen.emplace(f.key(), f);
        for (const Vec& facet : f.facets) {
            std::vector<Vec> child;
            for (const Vec& r : f.rays)
                if (dot(facet, r) == 0) child.push_back(r);
            queue.push_back(child);
        }
    }
    // ensure the zero face is present (cones with no facets, e.g. {0} itself)
    Cone zero = cone_from_rays({}, c.ambient);
    seen.emplace(zero.key(), zero);
    std::vector<Cone> out;
    for (auto& [k, f] : seen) out.push_back(f);
    std::sort(out.begin(), out.end(),
              [](const Cone& x, const Cone& y) {
                  return x.dim != y.dim ? x.dim < y.dim : x.key() < y.key();
              });
    return out;
}

Vec interior_lattice_point(const Cone& c) {
    if (c.dim == 0) fail("ZeroCone", "no interior lattice point in the zero cone");
    Vec s = zero_vec(c.ambient);
    for (const Vec& r : c.rays) s = add(s, r);
    return s;
}

std::vector<Vec> Fan::rays() const {
    std::vector<Vec> out;
    for (const Cone& c : cones)
        if (c.dim == 1) out.push_back(c.rays[0]);
    return sorted_unique(out);
}

std::vector<const Cone*> Fan::maximal() const {
    int top = 0;
    for (const Cone& c : cones) top = std::max(top, c.dim);
    std::vector<const Cone*> out;
    for (const Cone& c : cones)
        if (c.dim == top) out.push_back(&c);
    return out;
}

const Cone* Fan::cone_containing(const Vec& v) const {
    for (const Cone& c : cones)
        if (c.contains(v)) return &c; // cones sorted by dim: smallest first
    return nullptr;
}

Fan fan_from_maximal(const Cone& support, const std::vector<Cone>& maximal_cells) {
    std::map<std::string, Cone> seen;
    for (const Cone& cell : maximal_cells) {
        for (Cone& f : face_lattice(cell)) {
            seen.emplace(f.key(), std::move(f));
        }
    }
    Fan fan;
    fan.support = support;
    for (auto& [k, c] : seen) fan.cones.push_back(c);
    std::sort(fan.cones.begin(), fan.cones.end(),
              [](const Cone& x, const Cone& y) {
                  return x.dim != y.dim ? x.dim < y.dim : x.key() < y.key();
              });
    return fan;
}

Fan common_refinement(const std::vector<Fan>& fans) {
    if (fans.empty()) fail("InternalError", "refinement of no fans");
    for (size_t i = 1; i < fans.size(); ++i)
        if (fans[i].support.key() != fans[0].support.key())
            fail("SupportMismatch", "fans have different supports");
    std::vector<Cone> cells;
    for (const Cone* c : fans[0].maximal()) cells.push_back(*c);
    for (size_t i = 1; i < fans.size(); ++i) {
        std::vector<Cone> next;
        std::set<std::string> keys;
        for (const Cone& a : cells) {
            for (const Cone* b : fans[i].maximal()) {
                Cone is = intersect_cones(a, *b);
                if (is.dim == fans[0].support.dim && !keys.count(is.key())) {
                    keys.insert(is.key());
                    next.push_back(is);
                }
            }
        }
        cells = std::move(next);
    }
    Fan out = fan_from_maximal(fans[0].support, cells);
    // the 1-skeleton of the intersection is the union of the 1-skeletons
    std::vector<Vec> expect;
    for (const Fan& f : fans) {
        auto r = f.rays();
        expect.insert(expect.end(), r.begin(), r.end());
    }
    expect = sorted_unique(expect);
    if (out.rays() != expect)
        fail("InternalError", "refinement ray-set identity violated");
    return out;
}

Fan simplicial_subdivision(const Cone& c) {
    if (!c.is_strictly_convex())
        fail("NotStrictlyConvex", "triangulation requires a pointed cone");
    std::vector<Vec> order = c.rays; // already lex sorted
    std::vector<std::vector<size_t>> simplices;
    std::vector<Vec> placed;
    Cone cur;
    for (size_t idx = 0; idx < order.size(); ++idx) {
        const Vec& r = order[idx];
        if (placed.empty()) {
            simplices.push_back({idx});
        } else {
            Mat span = placed;
            span.push_back(r);
            bool grows = rank_of(span) > rank_of(placed);
            if (grows) {
                for (auto& s : simplices) s.push_back(idx);
            } else {
                std::vector<std::vector<size_t>> fresh;
                std::set<std::vector<size_t>> dedup;
                for (const Vec& f : cur.facets) {
                    if (dot(f, r) >= 0) continue; // not visible
                    for (const auto& s : simplices) {
                        for (size_t drop = 0; drop < s.size(); ++drop) {
                            bool on_facet = true;
                            for (size_t k = 0; k < s.size() && on_facet; ++k) {
                                if (k == drop) continue;
                                if (dot(f, order[s[k]]) != 0) on_facet = false;
                            }
                            if (!on_facet) continue;
                            std::vector<size_t> ns;
                            for (size_t k = 0; k < s.size(); ++k)
                                if (k != drop) ns.push_back(s[k]);
                            ns.push_back(idx);
                            std::sort(ns.begin(), ns.end());
                            if (dedup.insert(ns).second) fresh.push_back(ns);
                        }
                    }
                }
                simplices.insert(simplices.end(), fresh.begin(), fresh.end());
            }
        }
        placed.push_back(r);
        cur = cone_from_rays(placed, c.ambient);
    }
    std::vector<Cone> cells;
    for (const auto& s : simplices) {
        std::vector<Vec> rays;
        for (size_t i : s) rays.push_back(order[i]);
        cells.push_back(cone_from_rays(rays, c.ambient));
    }
    if (cells.empty()) cells.push_back(cone_from_rays({}, c.ambient));
    return fan_from_maximal(c, cells);
}

NewtonData newton_polyhedron(const std::vector<Vec>& points, const Cone& recession) {
    NewtonData nd;
    nd.points = sorted_unique(points);
    if (nd.points.empty()) fail("InternalError", "newton polyhedron of empty set");
    nd.recession = recession;
    for (const Vec& p : nd.points)
        if (!recession.contains(p))
            fail("PointOutsideDualCone", "point " + to_string(p) + " outside the dual cone");
    nd.sigma = dual_cone(recession);

    std::vector<Cone> cells;
    for (const Vec& p : nd.points) {
        std::vector<Vec> ineqs = nd.sigma.facets;
        for (const Vec& q : nd.points)
            if (q != p) ineqs.push_back(sub(q, p));
        Cone dp = cone_from_inequalities(ineqs, nd.sigma.span_eqs, nd.sigma.ambient);
        if (dp.dim == 0) continue;
        Vec nu = interior_lattice_point(dp);
        bool vertex = nd.sigma.contains_rel_interior(nu);
        for (const Vec& q : nd.points)
            if (vertex && q != p && dot(nu, sub(q, p)) <= 0) vertex = false;
        if (vertex) {
            nd.vertices.push_back(p);
            cells.push_back(dp);
        }
    }
    nd.vertices = sorted_unique(nd.vertices);
    nd.dual_fan = fan_from_maximal(nd.sigma, cells);
    return nd;
}

Int support_value(const NewtonData& nd, const Vec& nu) {
    if (!nd.sigma.contains(nu))
        fail("OutsideSupport", "vector " + to_string(nu) + " is not in the support cone");
    Int best;
    bool first = true;
    for (const Vec& p : nd.points) {
        Int v = dot(nu, p);
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return best;
}

std::vector<Vec> face_points(const NewtonData& nd, const Vec& nu) {
    Int m = support_value(nd, nu);
    std::vector<Vec> out;
    for (const Vec& p : nd.points)
        if (dot(nu, p) == m) out.push_back(p);
    return out;
}

std::vector<Vec> face_vertices(const NewtonData& nd, const Vec& nu) {
    Int m = support_value(nd, nu);
    std::vector<Vec> out;
    for (const Vec& p : nd.vertices)
        if (dot(nu, p) == m) out.push_back(p);
    return out;
}

std::vector<QVec> polytope_vertices(const Polytope& p) {
    size_t n = static_cast<size_t>(p.ambient);
    // homogenize: (x,t), t >= 0, <a,x> - c t >= 0
    std::vector<Vec> ineqs, eqs;
    for (const auto& [a, c] : p.ineqs) {
        Vec row = a;
        row.push_back(-c);
        ineqs.push_back(row);
    }
    Vec tpos = zero_vec(n + 1);
    tpos[n] = 1;
    ineqs.push_back(tpos);
    for (const auto& [a, c] : p.eqs) {
        Vec row = a;
        row.push_back(-c);
        eqs.push_back(row);
    }
    DDResult dd = dd_from_inequalities(ineqs, eqs, p.ambient + 1);
    std::vector<QVec> verts;
    bool recession = !dd.lineality.empty();
    for (const Vec& r : dd.rays) {
        if (r[n] == 0) {
            recession = true;
            continue;
        }
        QVec v(n);
        for (size_t i = 0; i < n; ++i) v[i] = Rat(r[i]) / Rat(r[n]);
        verts.push_back(v);
    }
    if (!verts.empty() && recession)
        fail("UnboundedPolytope", "system has recession directions");
    return verts;
}

bool polytope_is_empty(const Polytope& p) { return polytope_vertices(p).empty(); }

std::vector<Vec> polytope_lattice_points(const Polytope& p, Budget* budget) {
    std::vector<QVec> verts = polytope_vertices(p);
    if (verts.empty()) return {};
    size_t n = static_cast<size_t>(p.ambient);
    std::vector<Int> lo(n), hi(n);
    for (size_t i = 0; i < n; ++i) {
        Rat mn = verts[0][i], mx = verts[0][i];
        for (const QVec& v : verts) {
            if (v[i] < mn) mn = v[i];
            if (v[i] > mx) mx = v[i];
        }
        lo[i] = rat_ceil(mn);
        hi[i] = rat_floor(mx);
        if (lo[i] > hi[i]) return {};
    }
    std::vector<Vec> out;
    Vec x = lo;
    for (;;) {
        charge(budget);
        bool ok = true;
        for (const auto& [a, c] : p.eqs)
            if (dot(a, x) != c) {
                ok = false;
                break;
            }
        if (ok)
            for (const auto& [a, c] : p.ineqs)
                if (dot(a, x) < c) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(x);
        // lexicographic odometer (last coordinate fastest)
        size_t i = n;
        while (i > 0) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                for (size_t j = i + 1; j < n; ++j) x[j] = lo[j];
                break;
            }
            if (i == 0) return out;
        }
        if (n == 0) { // ambient 0: single point already tested
            return out;
        }
    }
}

} // namespace toric
