#pragma once

#include <optional>
#include <set>
#include <vector>

#include "toric/budget.hpp"
#include "toric/polyhedral.hpp"

namespace toric {

// Semigroup of finite type in a rank-d lattice, in coordinates where the
// generators generate the whole lattice (the index-1 hypothesis).
struct SemigroupData {
    int rank = 0;                     // d
    std::vector<Vec> generators;      // minimal, deduped, rebased
    Cone sigma_dual;                  // R_{>=0} Lambda, strictly convex, dim d
    Cone sigma;                       // dual cone in N

    std::vector<Vec> original_generators; // minimal set, input coordinates
    Mat rebase;                           // rows: basis of the generated group
};

// unique minimal generating set of the semigroup generated by `raw`
std::vector<Vec> minimalize_generators(const std::vector<Vec>& raw,
                                       Budget* budget = nullptr);

SemigroupData build_semigroup(const std::vector<Vec>& raw, int rank,
                              Budget* budget = nullptr);

// membership of v in the semigroup generated by gens (bounded enumeration)
bool semigroup_contains(const std::vector<Vec>& gens, const Vec& v,
                        Budget* budget = nullptr);

// Logarithmic jacobian ladder: J_k point sets, Newton polyhedra, and the
// partial refinements cap_{i<=k} Sigma_i.
struct LogJacobianLadder {
    const SemigroupData* semigroup = nullptr;
    std::vector<std::vector<Vec>> ideals; // ideals[k-1] = J_k
    std::vector<NewtonData> newton;       // newton[k-1] = N(J_k)
    std::vector<Fan> refinements;         // refinements[k-1] = cap_{i<=k} Sigma_i

    int dim() const { return static_cast<int>(ideals.size()); }
};

LogJacobianLadder log_jacobian_ladder(const SemigroupData& s);

// phi/psi profile of nu with the greedy generator choices
struct PhiProfile {
    Vec nu;
    std::vector<Int> ord;        // ord_{J_1}(nu) .. ord_{J_d}(nu)
    std::vector<Int> phi;        // phi_1 .. phi_d
    std::vector<Int> psi;        // psi_1 .. psi_d
    std::vector<int> greedy;     // chosen generator indices i_1 .. i_d (0-based)

    const Int& ord_k(int k) const { return ord[static_cast<size_t>(k) - 1]; }
    const Int& phi_k(int k) const { return phi[static_cast<size_t>(k) - 1]; }
    const Int& psi_k(int k) const { return psi[static_cast<size_t>(k) - 1]; }
};

PhiProfile phi_profile(const LogJacobianLadder& l, const Vec& nu);

// candidate pole set B(Lambda): pairs (a, b) = (Psi_k, phi_k) at skeleton rays
std::set<std::pair<Int, Int>> candidate_pole_set(const LogJacobianLadder& l);

// cones tau of cap_{i<=k} Sigma_i with face of N(J_k) inside int(sigma^vee)
// and A_{k,tau} nonempty
std::vector<Cone> dk_cones(const LogJacobianLadder& l, int k);

// restriction of the semigroup to a face theta of sigma
struct FaceRestriction {
    bool whole_face = false;      // theta = sigma: the zero semigroup
    SemigroupData semigroup;      // rebased restricted semigroup (if not zero)
    Int index = 1;                // i(theta, Lambda)
};

FaceRestriction face_restriction(const SemigroupData& s, const Cone& theta,
                                 Budget* budget = nullptr);

} // namespace toric
