#include "toric/series.hpp"

#include <algorithm>

#include "toric/error.hpp"

namespace toric {

LPoly LPoly::monomial(long long deg, Int coeff) {
    LPoly p;
    if (coeff == 0) return p;
    p.c.assign(static_cast<size_t>(deg) + 1, Int(0));
    p.c[static_cast<size_t>(deg)] = std::move(coeff);
    return p;
}

Int LPoly::eval_at_one() const {
    Int s = 0;
    for (const Int& x : c) s += x;
    return s;
}

void LPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

LPoly& LPoly::operator+=(const LPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Int(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Int(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
    LPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    r.trim();
    return r;
}

std::string LPoly::str(const std::string& lsym) const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t k = c.size(); k-- > 0;) {
        const Int& v = c[k];
        if (v == 0) continue;
        std::string term;
        Int av = v < 0 ? Int(-v) : v;
        if (k == 0)
            term = av.str();
        else {
            if (av != 1) term = av.str() + "*";
            term += lsym;
            if (k > 1) term += "^" + std::to_string(k);
        }
        if (s.empty())
            s = (v < 0 ? "-" : "") + term;
        else
            s += (v < 0 ? " - " : " + ") + term;
    }
    return s;
}

LTPoly LTPoly::from_term(long long lexp, long long texp, Int coeff) {
    LTPoly p;
    p.insert_term(lexp, texp, coeff);
    return p;
}

void LTPoly::insert_term(long long lexp, long long texp, const Int& coeff) {
    if (coeff == 0) return;
    LPoly& slot = t[texp];
    slot += LPoly::monomial(lexp, coeff);
    if (slot.is_zero()) t.erase(texp);
}

LTPoly& LTPoly::operator+=(const LTPoly& o) {
    for (const auto& [deg, p] : o.t) {
        LPoly& slot = t[deg];
        slot += p;
        if (slot.is_zero()) t.erase(deg);
    }
    return *this;
}

LTPoly& LTPoly::operator-=(const LTPoly& o) {
    for (const auto& [deg, p] : o.t) {
        LPoly& slot = t[deg];
        slot -= p;
        if (slot.is_zero()) t.erase(deg);
    }
    return *this;
}

LTPoly operator*(const LTPoly& a, const LTPoly& b) {
    LTPoly r;
    for (const auto& [da, pa] : a.t)
        for (const auto& [db, pb] : b.t) {
            LPoly& slot = r.t[da + db];
            slot += pa * pb;
            if (slot.is_zero()) r.t.erase(da + db);
        }
    return r;
}

std::string LTPoly::str() const {
    if (t.empty()) return "0";
    std::string s;
    for (const auto& [deg, p] : t) {
        std::string coeff = p.str();
        bool atom = p.c.size() == 1 || deg == 0;
        std::string term;
        if (deg == 0)
            term = coeff;
        else {
            term = atom ? coeff : "(" + coeff + ")";
            if (term == "1")
                term = "";
            else if (term == "-1")
                term = "-";
            else
                term += "*";
            term += "T";
            if (deg > 1) term += "^" + std::to_string(deg);
        }
        if (!s.empty()) s += " + ";
        s += term;
    }
    return s;
}

namespace {

LTPoly den_factor_poly(long long a, long long b) {
    LTPoly f = LTPoly::from_term(0, 0, 1);
    f.insert_term(a, b, -1);
    return f;
}

std::vector<DenFactor> merge_factors(std::vector<DenFactor> den) {
    std::sort(den.begin(), den.end(), [](const DenFactor& x, const DenFactor& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    std::vector<DenFactor> out;
    for (const DenFactor& f : den) {
        if (f.mult == 0) continue;
        if (f.b < 1) fail("InternalError", "denominator factor with T-power < 1");
        if (!out.empty() && out.back().a == f.a && out.back().b == f.b)
            out.back().mult += f.mult;
        else
            out.push_back(f);
    }
    return out;
}

// exact division attempt of p by (1 - L^a T^b); nullopt if not divisible
std::optional<LTPoly> try_divide(const LTPoly& p, long long a, long long b) {
    if (p.is_zero()) return p;
    long long tmax = p.tdegree();
    LTPoly q;
    for (long long deg = 0; deg <= tmax; ++deg) {
        LPoly coeff;
        auto it = p.t.find(deg);
        if (it != p.t.end()) coeff = it->second;
        if (deg >= b) {
            auto qit = q.t.find(deg - b);
            if (qit != q.t.end()) coeff += qit->second * LPoly::monomial(a, 1);
        }
        if (!coeff.is_zero()) q.t[deg] = coeff;
    }
    // remainder vanishes iff q has no terms with T-degree > tmax - b
    for (long long deg = std::max<long long>(0, tmax - b + 1); deg <= tmax; ++deg)
        if (q.t.count(deg)) return std::nullopt;
    return q;
}

} // namespace

MotivicRational MotivicRational::one() {
    MotivicRational r;
    r.num = LTPoly::from_term(0, 0, 1);
    return r;
}

MotivicRational make_rational(LTPoly num, std::vector<DenFactor> den) {
    MotivicRational r;
    r.num = std::move(num);
    r.den = merge_factors(std::move(den));
    return r;
}

MotivicRational normalize(MotivicRational r) {
    if (r.num.is_zero()) {
        r.den.clear();
        return r;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& f : r.den) {
            while (f.mult > 0) {
                auto q = try_divide(r.num, f.a, f.b);
                if (!q) break;
                r.num = *q;
                --f.mult;
                changed = true;
            }
        }
        r.den.erase(std::remove_if(r.den.begin(), r.den.end(),
                                   [](const DenFactor& f) { return f.mult == 0; }),
                    r.den.end());
    }
    return r;
}

MotivicRational add(const MotivicRational& r1, const MotivicRational& r2) {
    // common denominator: per-(a,b) max multiplicity
    std::map<std::pair<long long, long long>, int> need;
    for (const auto& f : r1.den) need[{f.a, f.b}] = std::max(need[{f.a, f.b}], f.mult);
    for (const auto& f : r2.den) need[{f.a, f.b}] = std::max(need[{f.a, f.b}], f.mult);
    auto lift = [&](const MotivicRational& r) {
        LTPoly n = r.num;
        for (const auto& [ab, mult] : need) {
            int have = 0;
            for (const auto& f : r.den)
                if (f.a == ab.first && f.b == ab.second) have = f.mult;
            for (int i = have; i < mult; ++i) n = n * den_factor_poly(ab.first, ab.second);
        }
        return n;
    };
    LTPoly num = lift(r1);
    num += lift(r2);
    std::vector<DenFactor> den;
    for (const auto& [ab, mult] : need) den.push_back({ab.first, ab.second, mult});
    return normalize(make_rational(std::move(num), std::move(den)));
}

MotivicRational mul(const MotivicRational& r1, const MotivicRational& r2) {
    std::vector<DenFactor> den = r1.den;
    den.insert(den.end(), r2.den.begin(), r2.den.end());
    return normalize(make_rational(r1.num * r2.num, std::move(den)));
}

MotivicRational mul_poly(const LTPoly& p, const MotivicRational& r) {
    return normalize(make_rational(p * r.num, r.den));
}

std::vector<LPoly> expand(const MotivicRational& r, long long order) {
    std::vector<LPoly> res(static_cast<size_t>(order) + 1);
    for (const auto& [deg, p] : r.num.t) {
        if (deg > order) continue;
        res[static_cast<size_t>(deg)] += p;
    }
    for (const auto& f : r.den) {
        for (int m = 0; m < f.mult; ++m) {
            // multiply by sum_j L^{a j} T^{b j}
            std::vector<LPoly> next(res.size());
            for (long long deg = 0; deg <= order; ++deg) {
                LPoly acc;
                for (long long j = 0; deg - j * f.b >= 0; ++j) {
                    const LPoly& src = res[static_cast<size_t>(deg - j * f.b)];
                    if (!src.is_zero())
                        acc += src * LPoly::monomial(f.a * j, 1);
                    if (f.b == 0) break;
                }
                next[static_cast<size_t>(deg)] = acc;
            }
            res = std::move(next);
        }
    }
    return res;
}

int pole_multiplicity(const MotivicRational& r, long long a, long long b) {
    MotivicRational n = normalize(r);
    for (const auto& f : n.den)
        if (f.a == a && f.b == b) return f.mult;
    return 0;
}

bool equal_rational(const MotivicRational& r1, const MotivicRational& r2) {
    LTPoly lhs = r1.num;
    for (const auto& f : r2.den)
        for (int m = 0; m < f.mult; ++m) lhs = lhs * den_factor_poly(f.a, f.b);
    LTPoly rhs = r2.num;
    for (const auto& f : r1.den)
        for (int m = 0; m < f.mult; ++m) rhs = rhs * den_factor_poly(f.a, f.b);
    return lhs == rhs;
}

namespace {

std::string factor_str(const DenFactor& f, bool latex) {
    std::string l = latex ? "\\mathbf{L}" : "L";
    std::string base = "1 - ";
    if (f.a == 1)
        base += l;
    else if (f.a != 0)
        base += l + "^" + (latex ? "{" + std::to_string(f.a) + "}" : std::to_string(f.a));
    if (f.a != 0 && f.b > 0) base += latex ? " " : "*";
    if (f.b >= 1) {
        base += "T";
        if (f.b > 1) base += latex ? "^{" + std::to_string(f.b) + "}" : "^" + std::to_string(f.b);
    }
    std::string s = "(" + base + ")";
    if (f.mult > 1) s += latex ? "^{" + std::to_string(f.mult) + "}" : "^" + std::to_string(f.mult);
    return s;
}

} // namespace

std::string to_plain(const MotivicRational& r) {
    if (r.num.is_zero()) return "0";
    std::string n = r.num.str();
    if (r.den.empty()) return n;
    std::string d;
    for (const auto& f : r.den) d += factor_str(f, false);
    return "(" + n + ") / (" + d + ")";
}

std::string to_latex(const MotivicRational& r) {
    if (r.num.is_zero()) return "0";
    std::string n = r.num.str();
    // plain-ish numerator with \mathbf{L}
    std::string converted;
    for (size_t i = 0; i < n.size(); ++i) {
        if (n[i] == 'L')
            converted += "\\mathbf{L}";
        else if (n[i] == '*')
            converted += " ";
        else
            converted += n[i];
    }
    if (r.den.empty()) return converted;
    std::string d;
    for (const auto& f : r.den) d += factor_str(f, true);
    return "\\frac{" + converted + "}{" + d + "}";
}

// ---- Laurent --------------------------------------------------------------

LaurentPoly LaurentPoly::from_term(long long uexp, Int coeff) {
    LaurentPoly p;
    p.insert_term(uexp, coeff);
    return p;
}

void LaurentPoly::insert_term(long long uexp, const Int& coeff) {
    if (coeff == 0) return;
    Int& slot = c[uexp];
    slot += coeff;
    if (slot == 0) c.erase(uexp);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.c) insert_term(e, v);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.c) insert_term(e, -v);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, va] : a.c)
        for (const auto& [eb, vb] : b.c) r.insert_term(ea + eb, va * vb);
    return r;
}

namespace {

LaurentPoly laurent_factor(long long cexp) {
    LaurentPoly f = LaurentPoly::from_term(0, 1);
    f.insert_term(cexp, -1);
    return f;
}

std::vector<std::pair<long long, int>> laurent_merge(
    std::vector<std::pair<long long, int>> den) {
    std::sort(den.begin(), den.end());
    std::vector<std::pair<long long, int>> out;
    for (auto& [c, m] : den) {
        if (m == 0) continue;
        if (c <= 0) fail("InternalError", "laurent denominator exponent must be positive");
        if (!out.empty() && out.back().first == c)
            out.back().second += m;
        else
            out.emplace_back(c, m);
    }
    return out;
}

std::optional<LaurentPoly> laurent_try_divide(const LaurentPoly& p, long long cexp) {
    if (p.is_zero()) return p;
    long long emin = p.c.begin()->first;
    long long emax = p.c.rbegin()->first;
    LaurentPoly q;
    for (long long e = emin; e <= emax; ++e) {
        Int coeff = 0;
        auto it = p.c.find(e);
        if (it != p.c.end()) coeff = it->second;
        auto qit = q.c.find(e - cexp);
        if (qit != q.c.end()) coeff += qit->second;
        if (coeff != 0) q.c[e] = coeff;
    }
    for (long long e = emax - cexp + 1; e <= emax; ++e)
        if (q.c.count(e)) return std::nullopt;
    return q;
}

} // namespace

LaurentRational laurent_make(LaurentPoly num,
                             std::vector<std::pair<long long, int>> den) {
    LaurentRational r;
    r.num = std::move(num);
    r.den = laurent_merge(std::move(den));
    return r;
}

LaurentRational laurent_normalize(LaurentRational r) {
    if (r.num.is_zero()) {
        r.den.clear();
        return r;
    }
    for (auto& [c, m] : r.den) {
        while (m > 0) {
            auto q = laurent_try_divide(r.num, c);
            if (!q) break;
            r.num = *q;
            --m;
        }
    }
    r.den.erase(std::remove_if(r.den.begin(), r.den.end(),
                               [](const auto& f) { return f.second == 0; }),
                r.den.end());
    return r;
}

LaurentRational laurent_add(const LaurentRational& a, const LaurentRational& b) {
    std::map<long long, int> need;
    for (const auto& [c, m] : a.den) need[c] = std::max(need[c], m);
    for (const auto& [c, m] : b.den) need[c] = std::max(need[c], m);
    auto lift = [&](const LaurentRational& r) {
        LaurentPoly n = r.num;
        for (const auto& [c, m] : need) {
            int have = 0;
            for (const auto& [rc, rm] : r.den)
                if (rc == c) have = rm;
            for (int i = have; i < m; ++i) n = n * laurent_factor(c);
        }
        return n;
    };
    LaurentPoly num = lift(a);
    num += lift(b);
    std::vector<std::pair<long long, int>> den(need.begin(), need.end());
    return laurent_normalize(laurent_make(std::move(num), std::move(den)));
}

LaurentRational laurent_mul(const LaurentRational& a, const LaurentRational& b) {
    std::vector<std::pair<long long, int>> den = a.den;
    den.insert(den.end(), b.den.begin(), b.den.end());
    return laurent_normalize(laurent_make(a.num * b.num, std::move(den)));
}

bool laurent_equal(const LaurentRational& a, const LaurentRational& b) {
    LaurentPoly lhs = a.num;
    for (const auto& [c, m] : b.den)
        for (int i = 0; i < m; ++i) lhs = lhs * laurent_factor(c);
    LaurentPoly rhs = b.num;
    for (const auto& [c, m] : a.den)
        for (int i = 0; i < m; ++i) rhs = rhs * laurent_factor(c);
    return lhs == rhs;
}

namespace {

std::string laurent_poly_str(const LaurentPoly& p, bool latex) {
    if (p.is_zero()) return "0";
    std::string l = latex ? "\\mathbf{L}" : "L";
    std::string s;
    // print from highest L power (= lowest u exponent)
    for (auto it = p.c.begin(); it != p.c.end(); ++it) {
        long long e = it->first;
        const Int& v = it->second;
        Int av = v < 0 ? Int(-v) : v;
        std::string term;
        long long lexp = -e;
        if (lexp == 0)
            term = av.str();
        else {
            if (av != 1) term = av.str() + (latex ? " " : "*");
            term += l;
            if (lexp != 1)
                term += latex ? "^{" + std::to_string(lexp) + "}"
                              : "^" + std::to_string(lexp);
        }
        if (s.empty())
            s = (v < 0 ? "-" : "") + term;
        else
            s += (v < 0 ? " - " : " + ") + term;
    }
    return s;
}

std::string laurent_factor_str(long long c, int m, bool latex) {
    std::string l = latex ? "\\mathbf{L}" : "L";
    std::string s = "(1 - " + l +
                    (latex ? "^{-" + std::to_string(c) + "}" : "^-" + std::to_string(c)) +
                    ")";
    if (m > 1) s += latex ? "^{" + std::to_string(m) + "}" : "^" + std::to_string(m);
    return s;
}

} // namespace

std::string laurent_to_plain(const LaurentRational& r) {
    if (r.num.is_zero()) return "0";
    std::string n = laurent_poly_str(r.num, false);
    if (r.den.empty()) return n;
    std::string d;
    for (const auto& [c, m] : r.den) d += laurent_factor_str(c, m, false);
    return "(" + n + ") / (" + d + ")";
}

std::string laurent_to_latex(const LaurentRational& r) {
    if (r.num.is_zero()) return "0";
    std::string n = laurent_poly_str(r.num, true);
    if (r.den.empty()) return n;
    std::string d;
    for (const auto& [c, m] : r.den) d += laurent_factor_str(c, m, true);
    return "\\frac{" + n + "}{" + d + "}";
}

LaurentRational volume_specialize(const MotivicRational& r, int d) {
    MotivicRational n = normalize(r);
    int mult = 0;
    for (const auto& f : n.den)
        if (f.a == d && f.b == 1) mult = f.mult;
    if (mult != 1) fail("NotSimplePole", "(1 - L^d T) has multiplicity " + std::to_string(mult));
    std::vector<DenFactor> rest;
    for (const auto& f : n.den) {
        if (f.a == d && f.b == 1) {
            if (f.mult > 1) rest.push_back({f.a, f.b, f.mult - 1});
        } else {
            rest.push_back(f);
        }
    }
    // T = L^{-d}: monomial L^l T^t -> u^{t d - l}
    LaurentPoly num;
    for (const auto& [tdeg, p] : n.num.t)
        for (size_t l = 0; l < p.c.size(); ++l)
            if (p.c[l] != 0)
                num.insert_term(tdeg * d - static_cast<long long>(l), p.c[l]);
    std::vector<std::pair<long long, int>> den;
    for (const auto& f : rest) {
        long long c = f.b * d - f.a;
        if (c <= 0)
            fail("DenominatorCollapse",
                 "factor (1 - L^" + std::to_string(f.a) + " T^" + std::to_string(f.b) +
                     ") does not specialize");
        den.emplace_back(c, f.mult);
    }
    return laurent_normalize(laurent_make(std::move(num), std::move(den)));
}

} // namespace toric
