#pragma once

#include <map>
#include <vector>

#include "toric/budget.hpp"
#include "toric/polyhedral.hpp"
#include "toric/series.hpp"

namespace toric {

// Multivariate rational generating function: a term list over a factored
// denominator prod_v (1 - x^v).  All denominator exponents lie in a common
// strictly convex cone, so expansion to any finite graded order is defined.
struct MultiGenFun {
    int rank = 0;
    std::vector<std::pair<Vec, Int>> num; // exponent -> coefficient, lex sorted
    std::vector<Vec> den;                 // multiset of factor exponents

    void insert_term(const Vec& e, const Int& c);
};

MultiGenFun mgf_constant(int rank, Int c = Int(1));

// checks the denominator invariants (nonzero exponents, common pointed cone)
void mgf_validate(const MultiGenFun& f);

// power series coefficients of all exponents e with <w,e> <= bound
// (w must be positive on every denominator exponent)
std::map<Vec, Int> mgf_expand(const MultiGenFun& f, const Vec& w, const Int& bound);

// a strictly positive integer grading for f's denominator cone
Vec mgf_grading(const MultiGenFun& f);

// sum of x^a over the lattice points of the relative interior of c,
// denominator = one factor (1 - x^{nu_rho}) per edge of c
MultiGenFun genfun_interior(const Cone& c, Budget* budget = nullptr);

// lattice projection with trivial kernel-cone intersection (condition ele2)
struct ProjectionSpec {
    Mat matrix;       // rows; map ambient -> Z^r
    Cone source_cone; // tau
    bool kernel_ok = false;
};

ProjectionSpec make_projection(Mat matrix, Cone source_cone);

// sum of x^{pi(a)} over a in relint(tau) cap N, as a rational function with
// denominator exactly prod_{rho edge of tau} (1 - x^{pi(nu_rho)})
MultiGenFun genfun_projection(const ProjectionSpec& p, Budget* budget = nullptr,
                              bool verify = true);

// monomial ring map x^v -> L^{l(v)} T^{t(v)} given images of the basis vectors
MotivicRational substitute_monomial(const MultiGenFun& g,
                                    const std::vector<std::pair<long long, long long>>& images);

// x^v -> L^{-<v,w>} (the eta_tau-style specialization, Laurent output)
LaurentRational substitute_monomial_laurent(const MultiGenFun& g, const Vec& w);

} // namespace toric
