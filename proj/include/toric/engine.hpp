#pragma once

#include <set>
#include <string>
#include <vector>

#include "toric/genfun.hpp"
#include "toric/semigroup.hpp"
#include "toric/series.hpp"

namespace toric {

// One (k, tau) piece of the auxiliary series.
struct AuxPiece {
    int k = 0;
    std::vector<Vec> tau_rays;
    MotivicRational value;
};

// Auxiliary series P(Lambda) with its per-(k,tau) pieces; every denominator
// factor of the assembled series lies in candidate_pole_set.
struct AuxSeriesReport {
    std::vector<AuxPiece> pieces;
    MotivicRational total; // normalized
    std::set<std::pair<Int, Int>> candidate_poles;
};

AuxSeriesReport p_aux(const SemigroupData& s, Budget* budget = nullptr);

// local geometric motivic Poincare series of (Z^Lambda, 0)
struct LocalSeriesReport {
    MotivicRational total; // normalized
    std::vector<std::pair<std::vector<Vec>, MotivicRational>> face_pieces; // theta rays -> P
};

LocalSeriesReport p_geom_local_report(const SemigroupData& s, Budget* budget = nullptr);
MotivicRational p_geom_local(const SemigroupData& s, Budget* budget = nullptr);

// motivic volume, computed two independent ways (which must agree)
struct VolumeReport {
    LaurentRational direct;      // the Sigma_d cell formula
    LaurentRational specialized; // (1 - L^d T) P |_{T = L^{-d}}
};

VolumeReport motivic_volume(const SemigroupData& s, Budget* budget = nullptr);

// Hilbert basis of a pointed full-dimensional cone's lattice points
std::vector<Vec> hilbert_basis(const Cone& c, Budget* budget = nullptr);

bool is_normal(const SemigroupData& s, Budget* budget = nullptr);

struct GlobalSeriesReport {
    MotivicRational series;  // P_geom of the whole variety (normal case)
    LaurentRational volume;  // motivic volume of H(Z^Lambda)
};

GlobalSeriesReport p_geom_global_normal(const SemigroupData& s, Budget* budget = nullptr);

} // namespace toric
