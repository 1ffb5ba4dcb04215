#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/budget.hpp"
#include "toric/lattice.hpp"
#include "toric/numeric.hpp"

namespace toric {

// Rational convex polyhedral cone with both representations kept in sync.
// rays are primitive and sorted; facets are the facet normals of the cone
// inside its span (pairing >= 0 on the cone); span_eqs vanish on the span.
// Cones with lineality carry a basis of the lineality space; all cones that
// enter fans are strictly convex (lineality empty).
struct Cone {
    int ambient = 0;
    int dim = 0;
    std::vector<Vec> rays;      // primitive generators of the extreme rays
    std::vector<Vec> lineality; // basis rows of the lineality space
    std::vector<Vec> facets;    // <f,x> >= 0, tight on a facet
    std::vector<Vec> span_eqs;  // <e,x> = 0 on the cone

    bool is_strictly_convex() const { return lineality.empty(); }
    bool contains(const Vec& v) const;
    bool contains_rel_interior(const Vec& v) const;
    bool is_face_key_equal(const Cone& o) const;

    // canonical key: (dim, sorted rays, sorted lineality)
    std::string key() const;
};

Cone cone_from_rays(const std::vector<Vec>& rays, int ambient);
Cone cone_from_inequalities(const std::vector<Vec>& ineqs,
                            const std::vector<Vec>& eqs, int ambient);

// {w : <w,u> >= 0 for all u in c}
Cone dual_cone(const Cone& c);

// All faces of a strictly convex cone, the zero cone and c included,
// sorted by (dim, key).
std::vector<Cone> face_lattice(const Cone& c);

// intersection of two cones (inequality merge)
Cone intersect_cones(const Cone& a, const Cone& b);

// Sum of the primitive ray generators; lies in the relative interior.
Vec interior_lattice_point(const Cone& c);

// Fan: strictly convex cones, face-closed, pairwise intersecting in faces.
struct Fan {
    Cone support;
    std::vector<Cone> cones; // sorted by (dim, key); includes the zero cone

    std::vector<Vec> rays() const;             // 1-skeleton, sorted
    std::vector<const Cone*> maximal() const;  // cones of maximal dim
    const Cone* cone_containing(const Vec& v) const; // smallest cone containing v
};

Fan fan_from_maximal(const Cone& support, const std::vector<Cone>& maximal_cells);

// common refinement of fans with equal support
Fan common_refinement(const std::vector<Fan>& fans);

// simplicial fan supported on c whose rays are exactly the rays of c
// (lexicographic placing triangulation)
Fan simplicial_subdivision(const Cone& c);

// Newton polyhedron of a finite exponent set inside the cone `recession`
// (= sigma^vee), with its support function and dual fan on sigma.
struct NewtonData {
    std::vector<Vec> points;   // generating exponents (deduped, sorted)
    Cone recession;            // sigma^vee
    Cone sigma;                // dual of recession; support of the dual fan
    std::vector<Vec> vertices; // vertices of conv(points) + recession
    Fan dual_fan;
};

NewtonData newton_polyhedron(const std::vector<Vec>& points, const Cone& recession);

// min over points of <nu, p>; errors "OutsideSupport" if nu is not in sigma
Int support_value(const NewtonData& nd, const Vec& nu);

// face of the polyhedron determined by nu: the points attaining the minimum
std::vector<Vec> face_points(const NewtonData& nd, const Vec& nu);
std::vector<Vec> face_vertices(const NewtonData& nd, const Vec& nu);

// Bounded rational polytope { x : <a,x> >= c for (a,c) in ineqs,
//                                 <a,x> = c for (a,c) in eqs }.
struct Polytope {
    int ambient = 0;
    std::vector<std::pair<Vec, Int>> ineqs;
    std::vector<std::pair<Vec, Int>> eqs;
};

// exact vertex enumeration (errors "UnboundedPolytope" on recession rays)
std::vector<QVec> polytope_vertices(const Polytope& p);

// all lattice points in lexicographic order; empty polytope gives {}
std::vector<Vec> polytope_lattice_points(const Polytope& p, Budget* budget = nullptr);

bool polytope_is_empty(const Polytope& p);

} // namespace toric
