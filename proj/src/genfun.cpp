#include "toric/genfun.hpp"

#include <algorithm>
#include <set>

namespace toric {

void MultiGenFun::insert_term(const Vec& e, const Int& c) {
    if (c == 0) return;
    auto it = std::lower_bound(num.begin(), num.end(), e,
                               [](const auto& t, const Vec& v) { return lex_less(t.first, v); });
    if (it != num.end() && it->first == e) {
        it->second += c;
        if (it->second == 0) num.erase(it);
    } else {
        num.insert(it, {e, c});
    }
}

MultiGenFun mgf_constant(int rank, Int c) {
    MultiGenFun f;
    f.rank = rank;
    f.insert_term(zero_vec(static_cast<size_t>(rank)), c);
    return f;
}

void mgf_validate(const MultiGenFun& f) {
    for (const Vec& v : f.den)
        if (is_zero(v)) fail("InternalError", "zero denominator exponent");
    if (!f.den.empty()) {
        Cone c = cone_from_rays(f.den, f.rank);
        if (!c.is_strictly_convex())
            fail("InternalError", "denominator exponents not in a pointed cone");
    }
}

Vec mgf_grading(const MultiGenFun& f) {
    if (f.den.empty()) {
        Vec w(static_cast<size_t>(f.rank), Int(1));
        return w;
    }
    Cone c = cone_from_rays(f.den, f.rank);
    Cone d = dual_cone(c);
    // strictly positive on c \ {0}: an interior point of the dual; add span
    // corrections so the functional is positive on every den exponent
    Vec w = zero_vec(static_cast<size_t>(f.rank));
    for (const Vec& r : d.rays) w = add(w, r);
    for (const Vec& v : f.den)
        if (dot(w, v) <= 0) fail("InternalError", "grading not positive on denominator");
    return w;
}

std::map<Vec, Int> mgf_expand(const MultiGenFun& f, const Vec& w, const Int& bound) {
    std::map<Vec, Int> cur;
    for (const auto& [e, c] : f.num)
        if (dot(w, e) <= bound) cur[e] += c;
    for (const Vec& v : f.den) {
        Int step = dot(w, v);
        if (step <= 0) fail("InternalError", "expansion grading not positive");
        std::map<Vec, Int> next;
        for (const auto& [e, c] : cur) {
            Vec p = e;
            for (Int g = dot(w, e); g <= bound; g += step) {
                next[p] += c;
                p = add(p, v);
            }
        }
        for (auto it = next.begin(); it != next.end();) {
            if (it->second == 0)
                it = next.erase(it);
            else
                ++it;
        }
        cur = std::move(next);
    }
    return cur;
}

namespace {

// multiply the numerator polynomial by (1 - x^v)
void mul_one_minus(MultiGenFun& f, const Vec& v) {
    std::vector<std::pair<Vec, Int>> terms = f.num;
    for (const auto& [e, c] : terms) f.insert_term(add(e, v), -c);
}

// f += g after lifting both to the union denominator (multiset-wise)
MultiGenFun mgf_sum(const std::vector<MultiGenFun>& parts, int rank,
                    const std::vector<Vec>& target_den) {
    MultiGenFun out;
    out.rank = rank;
    out.den = target_den;
    std::sort(out.den.begin(), out.den.end(), lex_less);
    for (const MultiGenFun& p : parts) {
        // multiset difference target \ p.den
        std::vector<Vec> missing = out.den;
        for (const Vec& v : p.den) {
            auto it = std::find(missing.begin(), missing.end(), v);
            if (it == missing.end())
                fail("InternalError", "piece denominator not contained in target");
            missing.erase(it);
        }
        MultiGenFun lifted;
        lifted.rank = rank;
        lifted.num = p.num;
        for (const Vec& v : missing) mul_one_minus(lifted, v);
        for (const auto& [e, c] : lifted.num) out.insert_term(e, c);
    }
    return out;
}

// lattice points of { sum lambda_i vs[i] : 0 < lambda_i <= 1 }
std::vector<Vec> half_open_box_points(const std::vector<Vec>& vs, int ambient,
                                      Budget* budget) {
    size_t m = vs.size();
    size_t n = static_cast<size_t>(ambient);
    if (m == 0) return {};
    // bounding box over the 2^m corners
    Vec lo = zero_vec(n), hi = zero_vec(n);
    for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
        Vec corner = zero_vec(n);
        for (size_t i = 0; i < m; ++i)
            if (mask & (size_t(1) << i)) corner = add(corner, vs[i]);
        for (size_t j = 0; j < n; ++j) {
            if (mask == 0 || corner[j] < lo[j]) lo[j] = corner[j];
            if (mask == 0 || corner[j] > hi[j]) hi[j] = corner[j];
        }
    }
    std::vector<Vec> out;
    Vec x = lo;
    for (;;) {
        charge(budget);
        auto lam = solve_row_combination(vs, x);
        if (lam) {
            bool ok = true;
            for (const Rat& l : *lam)
                if (l <= 0 || l > 1) ok = false;
            if (ok) out.push_back(x);
        }
        size_t i = n;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                for (size_t j = i + 1; j < n; ++j) x[j] = lo[j];
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

Vec map_rows(const Mat& rows, const Vec& x) {
    Vec y(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) y[i] = dot(rows[i], x);
    return y;
}

// pull an inequality/equality f on the target back through pi (row f * pi)
Vec pullback(const Vec& f, const Mat& pi) {
    size_t n = pi.empty() ? 0 : pi[0].size();
    Vec r = zero_vec(n);
    for (size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0) continue;
        for (size_t i = 0; i < n; ++i) r[i] += f[j] * pi[j][i];
    }
    return r;
}

// genfun_interior for a cone given in coordinates of its own span
MultiGenFun interior_full_dim(const Cone& c, Budget* budget) {
    int n = c.ambient;
    if (c.dim == 0) return mgf_constant(n);
    Fan fan = simplicial_subdivision(c);
    std::vector<MultiGenFun> parts;
    for (const Cone& cell : fan.cones) {
        if (cell.dim == 0) continue;
        Vec probe = interior_lattice_point(cell);
        if (!c.contains_rel_interior(probe)) continue; // boundary cell
        MultiGenFun part;
        part.rank = n;
        part.den = cell.rays;
        for (const Vec& p : half_open_box_points(cell.rays, n, budget))
            part.insert_term(p, 1);
        parts.push_back(part);
    }
    return mgf_sum(parts, n, c.rays);
}

} // namespace

MultiGenFun genfun_interior(const Cone& c, Budget* budget) {
    if (!c.is_strictly_convex()) fail("NotStrictlyConvex", "interior generating function");
    if (c.dim == 0) return mgf_constant(c.ambient);
    if (c.dim == c.ambient) return interior_full_dim(c, budget);
    // relative interior: compute in the saturated lattice of the span
    Mat span = saturated_span_basis(c.rays, c.ambient);
    std::vector<Vec> coord_rays;
    for (const Vec& r : c.rays) {
        auto co = solve_integer_row_combination(span, r);
        if (!co) fail("InternalError", "ray outside saturated span");
        coord_rays.push_back(*co);
    }
    Cone cc = cone_from_rays(coord_rays, static_cast<int>(span.size()));
    MultiGenFun inner = interior_full_dim(cc, budget);
    MultiGenFun out;
    out.rank = c.ambient;
    auto embed = [&](const Vec& e) {
        Vec x = zero_vec(static_cast<size_t>(c.ambient));
        for (size_t i = 0; i < span.size(); ++i) x = add(x, scale(e[i], span[i]));
        return x;
    };
    for (const auto& [e, co] : inner.num) out.insert_term(embed(e), co);
    for (const Vec& v : inner.den) out.den.push_back(embed(v));
    std::sort(out.den.begin(), out.den.end(), lex_less);
    return out;
}

ProjectionSpec make_projection(Mat matrix, Cone source_cone) {
    ProjectionSpec p;
    p.matrix = std::move(matrix);
    p.source_cone = std::move(source_cone);
    std::vector<Vec> eqs = p.source_cone.span_eqs;
    for (const Vec& row : p.matrix) eqs.push_back(row);
    Cone k = cone_from_inequalities(p.source_cone.facets, eqs, p.source_cone.ambient);
    p.kernel_ok = (k.dim == 0);
    if (!p.kernel_ok) fail("KernelMeetsCone", "ker(pi) meets the source cone");
    return p;
}

namespace {

struct ProjectionWork {
    int src_rank;  // dimension of the working lattice (full-dim source)
    int dst_rank;  // r
    Budget* budget;
};

// fiber polytope of b over theta: {x in theta : pi x = b}
Polytope fiber_polytope(const Cone& theta, const Mat& pi, const Vec& b) {
    Polytope p;
    p.ambient = theta.ambient;
    for (const Vec& f : theta.facets) p.ineqs.push_back({f, Int(0)});
    for (const Vec& e : theta.span_eqs) p.eqs.push_back({e, Int(0)});
    for (size_t i = 0; i < pi.size(); ++i) p.eqs.push_back({pi[i], b[i]});
    return p;
}

bool in_image(const Cone& theta, const Mat& pi, const Vec& b, ProjectionWork& w) {
    for (const Vec& x : polytope_lattice_points(fiber_polytope(theta, pi, b), w.budget))
        if (theta.contains_rel_interior(x)) return true;
    return false;
}

// lattice length of a rational vector (0 for the zero vector)
Rat lattice_length(const QVec& v) {
    Int lcm = 1;
    for (const Rat& q : v) {
        Int den = denominator(q);
        lcm = lcm / gcd(lcm, den) * den;
    }
    Vec z(v.size());
    bool zero = true;
    for (size_t i = 0; i < v.size(); ++i) {
        Rat q = v[i] * Rat(lcm);
        z[i] = numerator(q);
        if (z[i] != 0) zero = false;
    }
    if (zero) return Rat(0);
    return Rat(content(z)) / Rat(lcm);
}

// F_{pi(relint theta cap Z^m)} with pi(theta) = thetabar simplicial
MultiGenFun simplicial_image_case(const Cone& theta, const Mat& pi, const Cone& thetabar,
                                  ProjectionWork& w) {
    int r = w.dst_rank;
    size_t q = thetabar.rays.size();

    // per-edge data
    std::vector<Vec> wvec(q);       // lattice vector on the edge, = pi(edge ray of theta)
    std::vector<bool> is_b(q, false);
    std::vector<Vec> ubar(q);       // verified shift for B-edges
    for (size_t j = 0; j < q; ++j) {
        // preimage face of the edge
        Cone ray = cone_from_rays({thetabar.rays[j]}, r);
        std::vector<Vec> ineqs = theta.facets;
        for (const Vec& f : ray.facets) ineqs.push_back(pullback(f, pi));
        std::vector<Vec> eqs = theta.span_eqs;
        for (const Vec& e : ray.span_eqs) eqs.push_back(pullback(e, pi));
        Cone face = cone_from_inequalities(ineqs, eqs, theta.ambient);
        if (face.dim < 1) fail("InternalError", "empty preimage of an image edge");
        is_b[j] = face.dim >= 2;
        wvec[j] = map_rows(pi, face.rays[0]); // lex-least edge of the face
        if (is_zero(wvec[j])) fail("InternalError", "edge image vanished");
    }

    std::vector<Vec> box = half_open_box_points(wvec, r, w.budget);

    // B-edges: find shifts ubar_j with (ubar_j + relint thetabar) cap Z^r
    // inside the image; certified by checking one full box cell, which
    // telescopes along every W direction.
    for (size_t j = 0; j < q; ++j) {
        if (!is_b[j]) continue;
        const Vec& prim = thetabar.rays[j];
        auto verts = polytope_vertices(fiber_polytope(theta, pi, prim));
        if (verts.empty()) fail("InternalError", "B-edge fiber is empty");
        QVec centroid(verts[0].size(), Rat(0));
        for (const QVec& v : verts)
            for (size_t i = 0; i < v.size(); ++i) centroid[i] += v[i];
        for (auto& x : centroid) x /= Rat(static_cast<int>(verts.size()));
        Rat delta = 0;
        for (const QVec& v : verts) {
            QVec diff(v.size());
            for (size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - centroid[i];
            Rat len = lattice_length(diff);
            if (len > delta) delta = len;
        }
        if (delta == 0) fail("InternalError", "B-edge fiber has no extent");
        Int t = rat_floor(1 / delta) + 1;
        const int max_retries = 64;
        bool certified = false;
        for (int attempt = 0; attempt < max_retries && !certified; ++attempt) {
            Vec cand = scale(t, prim);
            certified = true;
            for (const Vec& g : box) {
                if (!in_image(theta, pi, add(cand, g), w)) {
                    certified = false;
                    break;
                }
            }
            if (certified)
                ubar[j] = cand;
            else
                ++t;
        }
        if (!certified) fail("PeriodBudgetExceeded", "no certified shifted-cone inclusion");
    }

    // S = union over B-edges of (ubar_j + relint thetabar), by inclusion-exclusion
    std::vector<size_t> bidx;
    for (size_t j = 0; j < q; ++j)
        if (is_b[j]) bidx.push_back(j);
    MultiGenFun interior = genfun_interior(thetabar, w.budget);
    std::vector<MultiGenFun> parts;
    for (size_t mask = 1; mask < (size_t(1) << bidx.size()); ++mask) {
        Vec shift = zero_vec(static_cast<size_t>(r));
        int bits = 0;
        for (size_t i = 0; i < bidx.size(); ++i)
            if (mask & (size_t(1) << i)) {
                shift = add(shift, ubar[bidx[i]]);
                ++bits;
            }
        MultiGenFun piece;
        piece.rank = r;
        piece.den = interior.den;
        Int sign = (bits % 2 == 1) ? 1 : -1;
        for (const auto& [e, c] : interior.num) piece.insert_term(add(e, shift), sign * c);
        parts.push_back(piece);
    }

    auto in_S = [&](const Vec& p) {
        for (size_t j : bidx)
            if (thetabar.contains_rel_interior(sub(p, ubar[j]))) return true;
        return false;
    };

    // S' cells: C_n = sum n_j wvec_j + box, bounded along B-directions
    std::vector<size_t> aidx;
    for (size_t j = 0; j < q; ++j)
        if (!is_b[j]) aidx.push_back(j);
    std::vector<long long> bmax(bidx.size(), 0);
    for (size_t i = 0; i < bidx.size(); ++i) {
        size_t j = bidx[i];
        // cells with n_j * c_j < t_j, where wvec_j = c_j * prim and ubar_j = t_j * prim
        Int cj = 0, tj = 0;
        for (size_t k = 0; k < wvec[j].size(); ++k) {
            if (thetabar.rays[j][k] != 0) {
                cj = wvec[j][k] / thetabar.rays[j][k];
                tj = ubar[j][k] / thetabar.rays[j][k];
                break;
            }
        }
        Int hi = ceil_div(tj, cj) - 1;
        bmax[i] = hi < 0 ? -1 : static_cast<long long>(hi);
    }

    std::map<std::vector<long long>, std::vector<Vec>> cell_cache;
    auto cell_points = [&](const std::vector<long long>& n) -> const std::vector<Vec>& {
        auto it = cell_cache.find(n);
        if (it != cell_cache.end()) return it->second;
        Vec shift = zero_vec(static_cast<size_t>(r));
        for (size_t i = 0; i < aidx.size(); ++i)
            shift = add(shift, scale(Int(n[i]), wvec[aidx[i]]));
        for (size_t i = 0; i < bidx.size(); ++i)
            shift = add(shift, scale(Int(n[aidx.size() + i]), wvec[bidx[i]]));
        std::vector<Vec> pts;
        for (const Vec& g : box) {
            Vec p = add(shift, g);
            if (in_S(p)) continue;
            if (in_image(theta, pi, p, w)) pts.push_back(p);
        }
        return cell_cache.emplace(std::move(n), std::move(pts)).first->second;
    };

    // enumerate B-index combinations
    std::vector<std::vector<long long>> bcombos;
    {
        std::vector<long long> cur(bidx.size(), 0);
        for (;;) {
            bcombos.push_back(cur);
            size_t i = bidx.size();
            bool adv = false;
            while (i > 0) {
                --i;
                if (cur[i] < bmax[i]) {
                    ++cur[i];
                    for (size_t k = i + 1; k < bidx.size(); ++k) cur[k] = 0;
                    adv = true;
                    break;
                }
            }
            if (!adv) break;
            if (bidx.empty()) break;
        }
        if (bidx.empty()) bcombos = {{}};
        // drop combos entirely out of range (bmax = -1 means no cells)
        std::vector<std::vector<long long>> keep;
        for (auto& c : bcombos) {
            bool ok = true;
            for (size_t i = 0; i < c.size(); ++i)
                if (bmax[i] < 0) ok = false;
            if (ok) keep.push_back(c);
        }
        bcombos = keep;
    }

    auto assemble_sprime = [&](long long frontier) {
        std::vector<MultiGenFun> terms;
        std::vector<long long> acur(aidx.size(), 0);
        for (;;) {
            for (const auto& bc : bcombos) {
                std::vector<long long> full = acur;
                full.insert(full.end(), bc.begin(), bc.end());
                const std::vector<Vec>& pts = cell_points(full);
                if (!pts.empty()) {
                    MultiGenFun t;
                    t.rank = r;
                    for (size_t i = 0; i < aidx.size(); ++i)
                        if (acur[i] == frontier) t.den.push_back(wvec[aidx[i]]);
                    std::sort(t.den.begin(), t.den.end(), lex_less);
                    for (const Vec& p : pts) t.insert_term(p, 1);
                    terms.push_back(t);
                }
            }
            // odometer over A-coordinates in [0, frontier]
            size_t i = aidx.size();
            bool adv = false;
            while (i > 0) {
                --i;
                if (acur[i] < frontier) {
                    ++acur[i];
                    for (size_t k = i + 1; k < aidx.size(); ++k) acur[k] = 0;
                    adv = true;
                    break;
                }
            }
            if (!adv) break;
        }
        return terms;
    };

    std::vector<MultiGenFun> sprime_terms;
    if (aidx.empty()) {
        sprime_terms = assemble_sprime(0);
    } else {
        const long long frontier_cap = 64;
        bool closed = false;
        for (long long m = 1; m <= frontier_cap && !closed; ++m) {
            // verify translation on layers m and m+1
            closed = true;
            std::vector<long long> acur(aidx.size(), 0);
            // iterate all A-vectors with coords <= m+1 and max coord >= m
            for (;;) {
                long long mx = 0;
                for (long long v : acur) mx = std::max(mx, v);
                if (mx >= m) {
                    for (const auto& bc : bcombos) {
                        std::vector<long long> full = acur;
                        full.insert(full.end(), bc.begin(), bc.end());
                        const std::vector<Vec>& pts = cell_points(full);
                        for (size_t i = 0; i < aidx.size() && closed; ++i) {
                            if (acur[i] < m) continue;
                            std::vector<long long> prev = full;
                            --prev[i];
                            const std::vector<Vec>& prior = cell_points(prev);
                            std::vector<Vec> shifted;
                            for (const Vec& p : prior) shifted.push_back(add(p, wvec[aidx[i]]));
                            std::sort(shifted.begin(), shifted.end(), lex_less);
                            if (shifted != pts) closed = false;
                        }
                        if (!closed) break;
                    }
                }
                if (!closed) break;
                size_t i = aidx.size();
                bool adv = false;
                while (i > 0) {
                    --i;
                    if (acur[i] < m + 1) {
                        ++acur[i];
                        for (size_t k = i + 1; k < aidx.size(); ++k) acur[k] = 0;
                        adv = true;
                        break;
                    }
                }
                if (!adv) break;
            }
            if (closed) sprime_terms = assemble_sprime(m);
        }
        if (!closed) fail("PeriodBudgetExceeded", "no stable frontier layer found");
    }

    // assemble everything over the per-cell denominator {wvec_j}
    std::vector<Vec> cell_den(wvec.begin(), wvec.end());
    std::sort(cell_den.begin(), cell_den.end(), lex_less);
    // interior pieces currently have den = primitive rays of thetabar; convert
    // (1 - x^{prim}) to (1 - x^{c * prim}) by multiplying numerators
    std::vector<MultiGenFun> all_parts;
    for (MultiGenFun& piece : parts) {
        MultiGenFun conv;
        conv.rank = r;
        conv.num = piece.num;
        for (size_t j = 0; j < q; ++j) {
            // piece.den contains the primitive ray; expand to wvec_j
            const Vec& prim = thetabar.rays[j];
            Int cj = 0;
            for (size_t k = 0; k < prim.size(); ++k)
                if (prim[k] != 0) {
                    cj = wvec[j][k] / prim[k];
                    break;
                }
            // multiply numerator by 1 + x^prim + ... + x^{(c-1) prim}
            std::vector<std::pair<Vec, Int>> terms = conv.num;
            MultiGenFun acc;
            acc.rank = r;
            Vec offset = zero_vec(static_cast<size_t>(r));
            for (Int i = 0; i < cj; ++i) {
                for (const auto& [e, c] : terms) acc.insert_term(add(e, offset), c);
                offset = add(offset, prim);
            }
            conv.num = acc.num;
            conv.den.push_back(wvec[j]);
        }
        std::sort(conv.den.begin(), conv.den.end(), lex_less);
        all_parts.push_back(conv);
    }
    for (const MultiGenFun& t : sprime_terms) all_parts.push_back(t);
    return mgf_sum(all_parts, r, cell_den);
}

// recursive master for a full-dimensional source cone
MultiGenFun project_cone(const Cone& tau, const Mat& pi, ProjectionWork& w) {
    int r = w.dst_rank;
    if (tau.dim == 0) return mgf_constant(r);

    // injective shortcut: pi one-to-one on the ambient lattice
    if (kernel_basis(pi, tau.ambient).empty()) {
        MultiGenFun inner = genfun_interior(tau, w.budget);
        MultiGenFun out;
        out.rank = r;
        for (const auto& [e, c] : inner.num) out.insert_term(map_rows(pi, e), c);
        for (const Vec& v : inner.den) out.den.push_back(map_rows(pi, v));
        std::sort(out.den.begin(), out.den.end(), lex_less);
        return out;
    }

    std::vector<Vec> image_rays;
    for (const Vec& ray : tau.rays) image_rays.push_back(map_rows(pi, ray));
    Cone taubar = cone_from_rays(image_rays, r);

    Fan sub = simplicial_subdivision(taubar);
    std::vector<MultiGenFun> parts;
    for (const Cone& cellbar : sub.cones) {
        if (cellbar.dim == 0) continue;
        Vec probe = interior_lattice_point(cellbar);
        if (!taubar.contains_rel_interior(probe)) continue; // boundary cell
        std::vector<Vec> ineqs = tau.facets;
        for (const Vec& f : cellbar.facets) ineqs.push_back(pullback(f, pi));
        std::vector<Vec> eqs = tau.span_eqs;
        for (const Vec& e : cellbar.span_eqs) eqs.push_back(pullback(e, pi));
        Cone cell = cone_from_inequalities(ineqs, eqs, tau.ambient);
        parts.push_back(simplicial_image_case(cell, pi, cellbar, w));
    }

    // target denominator: one factor pi(nu_rho) per edge rho of tau
    std::vector<Vec> target;
    for (const Vec& ray : tau.rays) target.push_back(map_rows(pi, ray));
    std::sort(target.begin(), target.end(), lex_less);
    return mgf_sum(parts, r, target);
}

} // namespace

MultiGenFun genfun_projection(const ProjectionSpec& p, Budget* budget, bool verify) {
    if (!p.kernel_ok) fail("KernelMeetsCone", "projection spec not validated");
    const Cone& tau = p.source_cone;
    int r = static_cast<int>(p.matrix.size());
    if (tau.dim == 0) return mgf_constant(r);

    ProjectionWork w{tau.ambient, r, budget};
    MultiGenFun out;
    if (tau.dim == tau.ambient) {
        out = project_cone(tau, p.matrix, w);
    } else {
        // work in the saturated lattice of the span
        Mat span = saturated_span_basis(tau.rays, tau.ambient);
        std::vector<Vec> coord_rays;
        for (const Vec& ray : tau.rays) {
            auto co = solve_integer_row_combination(span, ray);
            if (!co) fail("InternalError", "ray outside saturated span");
            coord_rays.push_back(*co);
        }
        Cone cc = cone_from_rays(coord_rays, static_cast<int>(span.size()));
        Mat pic(p.matrix.size());
        for (size_t i = 0; i < p.matrix.size(); ++i) {
            Vec row(span.size());
            for (size_t j = 0; j < span.size(); ++j) row[j] = dot(p.matrix[i], span[j]);
            pic[i] = row;
        }
        ProjectionWork wc{cc.ambient, r, budget};
        out = project_cone(cc, pic, wc);
    }
    mgf_validate(out);

    if (verify) {
        // post-check: expansion agrees with direct image enumeration on a
        // graded slab (guards the frontier closure)
        Vec g = mgf_grading(out);
        Int bound = 0;
        for (const Vec& v : out.den) bound = std::max(bound, dot(g, v));
        for (const auto& [e, c] : out.num) bound = std::max(bound, dot(g, e));
        bound += 1;
        std::map<Vec, Int> coeffs = mgf_expand(out, g, bound);
        // direct: lattice points of the source with graded image <= bound
        Vec wsrc = pullback(g, p.matrix);
        Polytope slab;
        slab.ambient = tau.ambient;
        for (const Vec& f : tau.facets) slab.ineqs.push_back({f, Int(0)});
        for (const Vec& e : tau.span_eqs) slab.eqs.push_back({e, Int(0)});
        slab.ineqs.push_back({neg(wsrc), -bound});
        std::map<Vec, Int> direct;
        for (const Vec& x : polytope_lattice_points(slab, budget))
            if (tau.contains_rel_interior(x)) direct[map_rows(p.matrix, x)] = 1;
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            if (it->second == 0)
                it = coeffs.erase(it);
            else
                ++it;
        }
        if (coeffs != direct)
            fail("InternalError", "projection generating function failed self-check");
    }
    return out;
}

MotivicRational substitute_monomial(
    const MultiGenFun& g, const std::vector<std::pair<long long, long long>>& images) {
    if (images.size() != static_cast<size_t>(g.rank))
        fail("InternalError", "substitution image count mismatch");
    auto image_of = [&](const Vec& v) {
        long long l = 0, t = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            long long vi = static_cast<long long>(v[i]);
            l += vi * images[i].first;
            t += vi * images[i].second;
        }
        return std::pair<long long, long long>{l, t};
    };
    LTPoly num;
    for (const auto& [e, c] : g.num) {
        auto [l, t] = image_of(e);
        if (l < 0 || t < 0)
            fail("InternalError", "substitution produced a negative exponent");
        num.insert_term(l, t, c);
    }
    std::vector<DenFactor> den;
    for (const Vec& v : g.den) {
        auto [a, b] = image_of(v);
        if (a == 0 && b == 0) fail("DenominatorCollapse", "factor maps to 1 - 1");
        if (b < 1 || a < 0)
            fail("DenominatorCollapse", "factor leaves Z[L][[T]]");
        den.push_back({a, b, 1});
    }
    return make_rational(std::move(num), std::move(den));
}

LaurentRational substitute_monomial_laurent(const MultiGenFun& g, const Vec& wv) {
    LaurentPoly num;
    for (const auto& [e, c] : g.num) num.insert_term(static_cast<long long>(dot(wv, e)), c);
    std::vector<std::pair<long long, int>> den;
    for (const Vec& v : g.den) {
        Int a = dot(wv, v);
        if (a <= 0) fail("DenominatorCollapse", "eta factor does not contract");
        den.emplace_back(static_cast<long long>(a), 1);
    }
    return laurent_make(std::move(num), std::move(den));
}

} // namespace toric
