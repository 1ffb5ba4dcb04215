#pragma once

#include <vector>

#include "toric/engine.hpp"
#include "toric/semigroup.hpp"
#include "toric/series.hpp"

namespace toric {

// Brute-force coefficients of the auxiliary series P(Lambda) from first
// principles: enumerate equivalence classes of (nu, s) per (k, tau) and apply
// the jet-class formula (L-1)^k L^{ks - ord_{J_k}(nu)}.
std::vector<LPoly> oracle_aux_coefficients(const SemigroupData& s, int order,
                                           Budget* budget = nullptr);

// coefficients of the local series: faces summed plus the constant jet
std::vector<LPoly> oracle_local_coefficients(const SemigroupData& s, int order,
                                             Budget* budget = nullptr);

struct CompareReport {
    bool all_equal = true;
    int first_mismatch = -1;
    std::vector<LPoly> engine;
    std::vector<LPoly> oracle;
};

// expand(p_geom_local) vs oracle_local_coefficients, exact per coefficient
CompareReport compare(const SemigroupData& s, int order, Budget* budget = nullptr);

// a realized class with its lexicographically first witness
struct ClassTuple {
    int k = 0;
    std::vector<Vec> tau_rays;
    std::vector<Int> a; // phi_1(nu) <= ... <= phi_k(nu)
    Vec witness;
    Int phi_next; // phi_{k+1} bound over the class fiber (or -1 when k = d)
};

// all realized class tuples contributing up to T^order (diagnostic surface)
std::vector<ClassTuple> oracle_classes(const SemigroupData& s, int order,
                                       Budget* budget = nullptr);

} // namespace toric
