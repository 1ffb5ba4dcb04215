#pragma once

#include <map>
#include <string>
#include <vector>

#include "toric/numeric.hpp"

namespace toric {

// Dense polynomial in L with arbitrary-precision coefficients.
struct LPoly {
    std::vector<Int> c; // c[i] = coefficient of L^i, no trailing zeros

    static LPoly zero() { return {}; }
    static LPoly one() { return monomial(0, 1); }
    static LPoly monomial(long long deg, Int coeff);

    bool is_zero() const { return c.empty(); }
    long long degree() const { return static_cast<long long>(c.size()) - 1; }
    Int eval_at_one() const;
    void trim();

    LPoly& operator+=(const LPoly& o);
    LPoly& operator-=(const LPoly& o);
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator*(const LPoly& a, const LPoly& b);
    friend bool operator==(const LPoly& a, const LPoly& b) { return a.c == b.c; }

    std::string str(const std::string& lsym = "L") const;
};

// Polynomial in L and T, keyed by T-degree.
struct LTPoly {
    std::map<long long, LPoly> t; // only nonzero LPoly entries

    static LTPoly from_term(long long lexp, long long texp, Int coeff);
    bool is_zero() const { return t.empty(); }
    long long tdegree() const { return t.empty() ? -1 : t.rbegin()->first; }
    void insert_term(long long lexp, long long texp, const Int& coeff);

    LTPoly& operator+=(const LTPoly& o);
    LTPoly& operator-=(const LTPoly& o);
    friend LTPoly operator*(const LTPoly& a, const LTPoly& b);
    friend bool operator==(const LTPoly& a, const LTPoly& b) { return a.t == b.t; }

    std::string str() const;
};

// denominator factor (1 - L^a T^b)^mult with b >= 1
struct DenFactor {
    long long a = 0;
    long long b = 1;
    int mult = 1;

    friend bool operator<(const DenFactor& x, const DenFactor& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.mult < y.mult;
    }
    friend bool operator==(const DenFactor& x, const DenFactor& y) {
        return x.a == y.a && x.b == y.b && x.mult == y.mult;
    }
};

// Element of Z[L](T): numerator over a factored denominator.
struct MotivicRational {
    LTPoly num;
    std::vector<DenFactor> den; // sorted by (a,b), b >= 1, mult >= 1

    static MotivicRational zero() { return {}; }
    static MotivicRational one();
    bool is_zero() const { return num.is_zero(); }
};

MotivicRational make_rational(LTPoly num, std::vector<DenFactor> den);

// exact cancellation of denominator factors that divide the numerator
MotivicRational normalize(MotivicRational r);

MotivicRational add(const MotivicRational& r1, const MotivicRational& r2);
MotivicRational mul(const MotivicRational& r1, const MotivicRational& r2);
MotivicRational mul_poly(const LTPoly& p, const MotivicRational& r);

// coefficients of T^0..T^order of the power series expansion
std::vector<LPoly> expand(const MotivicRational& r, long long order);

// multiplicity of (1 - L^a T^b) after exact cancellation
int pole_multiplicity(const MotivicRational& r, long long a, long long b);

// exact equality as rational functions (cross multiplication)
bool equal_rational(const MotivicRational& r1, const MotivicRational& r2);

std::string to_plain(const MotivicRational& r);
std::string to_latex(const MotivicRational& r);

// ---- Laurent side (variable u = L^{-1}) ----------------------------------

struct LaurentPoly {
    std::map<long long, Int> c; // exponent of u -> coefficient, any sign

    static LaurentPoly from_term(long long uexp, Int coeff);
    bool is_zero() const { return c.empty(); }
    void insert_term(long long uexp, const Int& coeff);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.c == b.c;
    }
};

// Rational function of L with denominator a product of (1 - L^{-c}), c > 0.
struct LaurentRational {
    LaurentPoly num;
    std::vector<std::pair<long long, int>> den; // (c, mult), sorted, c > 0

    static LaurentRational zero() { return {}; }
    bool is_zero() const { return num.is_zero(); }
};

LaurentRational laurent_make(LaurentPoly num, std::vector<std::pair<long long, int>> den);
LaurentRational laurent_normalize(LaurentRational r);
LaurentRational laurent_add(const LaurentRational& a, const LaurentRational& b);
LaurentRational laurent_mul(const LaurentRational& a, const LaurentRational& b);
bool laurent_equal(const LaurentRational& a, const LaurentRational& b);
std::string laurent_to_plain(const LaurentRational& r);
std::string laurent_to_latex(const LaurentRational& r);

// multiply by (1 - L^d T), substitute T = L^{-d}
// pre: pole_multiplicity(r, (d,1)) == 1, errors "NotSimplePole" otherwise
LaurentRational volume_specialize(const MotivicRational& r, int d);

} // namespace toric
