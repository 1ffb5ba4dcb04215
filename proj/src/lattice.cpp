#include "toric/lattice.hpp"

#include <algorithm>

namespace toric {

namespace {

// Extended gcd: returns g >= 0 and x,y with x*a + y*b = g.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        if (a < 0) {
            x = -1;
            y = 0;
            return -a;
        }
        x = 1;
        y = 0;
        return a;
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Smith elimination of a (m x n).  Returns the diagonal entries (not yet
// divisibility-chained).  When cinv != nullptr it receives the n x n matrix
// with a_original = R^{-1} * D * (*cinv) for some unimodular row transform R,
// i.e. the row lattice of a_original equals the row lattice of D * cinv.
std::vector<Int> snf_core(Mat a, Mat* cinv) {
    size_t m = a.size();
    size_t n = m ? a[0].size() : 0;
    if (cinv) {
        cinv->assign(n, zero_vec(n));
        for (size_t i = 0; i < n; ++i) (*cinv)[i][i] = 1;
    }
    auto col_gcd_op = [&](size_t p, size_t j, const Int& x, const Int& y,
                          const Int& pp, const Int& q) {
        // columns (p,j) <- (x*p + y*j, -q*p + pp*j); det = x*pp + y*q = 1
        for (size_t i = 0; i < m; ++i) {
            Int s = a[i][p], t = a[i][j];
            a[i][p] = x * s + y * t;
            a[i][j] = -q * s + pp * t;
        }
        if (cinv) {
            // inverse acts on rows (p,j) of cinv: (pp*rp + q*rj, -y*rp + x*rj)
            Vec rp = (*cinv)[p], rj = (*cinv)[j];
            (*cinv)[p] = combine(pp, rp, q, rj);
            (*cinv)[j] = combine(-y, rp, x, rj);
        }
    };
    auto col_swap = [&](size_t p, size_t j) {
        for (size_t i = 0; i < m; ++i) std::swap(a[i][p], a[i][j]);
        if (cinv) std::swap((*cinv)[p], (*cinv)[j]);
    };
    auto col_negate = [&](size_t p) {
        for (size_t i = 0; i < m; ++i) a[i][p] = -a[i][p];
        if (cinv) (*cinv)[p] = neg((*cinv)[p]);
    };

    std::vector<Int> diag;
    size_t top = 0;
    while (top < m && top < n) {
        // locate a nonzero entry
        size_t pr = top, pc = top;
        bool found = false;
        for (size_t i = top; i < m && !found; ++i)
            for (size_t j = top; j < n && !found; ++j)
                if (a[i][j] != 0) {
                    pr = i;
                    pc = j;
                    found = true;
                }
        if (!found) break;
        std::swap(a[top], a[pr]);
        if (pc != top) col_swap(top, pc);
        for (;;) {
            // clear column below pivot by row ops; plain reduction when the
            // pivot divides (a gcd combination there would cycle forever)
            for (size_t i = top + 1; i < m; ++i) {
                if (a[i][top] == 0) continue;
                if (a[i][top] % a[top][top] == 0) {
                    Int q = a[i][top] / a[top][top];
                    a[i] = combine(Int(1), a[i], -q, a[top]);
                } else {
                    Int x, y;
                    Int g = ext_gcd(a[top][top], a[i][top], x, y);
                    Int p = a[top][top] / g, q = a[i][top] / g;
                    Vec nt = combine(x, a[top], y, a[i]);
                    Vec ni = combine(-q, a[top], p, a[i]);
                    a[top] = nt;
                    a[i] = ni;
                }
            }
            // clear row right of pivot by column ops
            bool pivot_shrunk = false;
            for (size_t j = top + 1; j < n; ++j) {
                if (a[top][j] == 0) continue;
                if (a[top][j] % a[top][top] == 0) {
                    Int q = a[top][j] / a[top][top];
                    // col_j <- col_j - q col_top
                    col_gcd_op(top, j, Int(1), Int(0), Int(1), q);
                } else {
                    Int x, y;
                    Int g = ext_gcd(a[top][top], a[top][j], x, y);
                    Int p = a[top][top] / g, q = a[top][j] / g;
                    col_gcd_op(top, j, x, y, p, q);
                    pivot_shrunk = true;
                }
            }
            if (!pivot_shrunk) {
                bool col_clean = true;
                for (size_t i = top + 1; i < m; ++i)
                    if (a[i][top] != 0) col_clean = false;
                if (col_clean) break;
            }
        }
        if (a[top][top] < 0) col_negate(top);
        diag.push_back(a[top][top]);
        ++top;
    }
    return diag;
}

} // namespace

Mat hnf_rows(Mat m) {
    if (m.empty()) return m;
    const size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < m.size(); ++c) {
        size_t pivot = r;
        while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[r], m[pivot]);
        for (size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Int x, y;
            Int g = ext_gcd(m[r][c], m[i][c], x, y);
            Int a = m[r][c] / g, b = m[i][c] / g;
            Vec nr = combine(x, m[r], y, m[i]);
            Vec ni = combine(-b, m[r], a, m[i]);
            m[r] = nr;
            m[i] = ni;
        }
        if (m[r][c] < 0) m[r] = neg(m[r]);
        for (size_t i = 0; i < r; ++i) {
            Int q = floor_div(m[i][c], m[r][c]);
            if (q != 0) m[i] = combine(Int(1), m[i], -q, m[r]);
        }
        ++r;
    }
    m.resize(r);
    return m;
}

int rank_of(const Mat& m) { return static_cast<int>(hnf_rows(m).size()); }

std::pair<int, bool> rank_and_independence(const Mat& m) {
    int r = rank_of(m);
    return {r, r == static_cast<int>(m.size())};
}

std::vector<Int> smith_divisors(Mat m) {
    std::vector<Int> divs = snf_core(std::move(m), nullptr);
    // enforce the divisibility chain d_1 | d_2 | ...
    for (size_t i = 0; i < divs.size(); ++i) {
        for (size_t j = i + 1; j < divs.size(); ++j) {
            if (divs[j] % divs[i] != 0) {
                Int g = gcd(divs[i], divs[j]);
                Int l = divs[i] / g * divs[j];
                divs[i] = g;
                divs[j] = l;
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Mat kernel_basis(const Mat& rows, int ambient) {
    size_t n = static_cast<size_t>(ambient);
    Mat a = rows;
    for (auto& r : a)
        if (r.size() != n) fail("InternalError", "kernel_basis dimension mismatch");
    size_t m = a.size();
    // column ops tracked in U; after the sweep every row vanishes on the
    // non-pivot columns, whose U-columns then span the integer kernel.
    Mat u(n, zero_vec(n));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    size_t pivot_col = 0;
    for (size_t i = 0; i < m && pivot_col < n; ++i) {
        bool nonzero = false;
        for (size_t j = pivot_col; j < n; ++j)
            if (a[i][j] != 0) nonzero = true;
        if (!nonzero) continue;
        if (a[i][pivot_col] == 0) {
            size_t j = pivot_col + 1;
            while (a[i][j] == 0) ++j;
            for (size_t k = 0; k < m; ++k) std::swap(a[k][pivot_col], a[k][j]);
            for (size_t k = 0; k < n; ++k) std::swap(u[k][pivot_col], u[k][j]);
        }
        for (size_t j = pivot_col + 1; j < n; ++j) {
            if (a[i][j] == 0) continue;
            Int x, y;
            Int g = ext_gcd(a[i][pivot_col], a[i][j], x, y);
            Int p = a[i][pivot_col] / g, q = a[i][j] / g;
            for (size_t k = 0; k < m; ++k) {
                Int s = a[k][pivot_col], t = a[k][j];
                a[k][pivot_col] = x * s + y * t;
                a[k][j] = -q * s + p * t;
            }
            for (size_t k = 0; k < n; ++k) {
                Int s = u[k][pivot_col], t = u[k][j];
                u[k][pivot_col] = x * s + y * t;
                u[k][j] = -q * s + p * t;
            }
        }
        ++pivot_col;
    }
    Mat ker;
    for (size_t j = pivot_col; j < n; ++j) {
        Vec v(n);
        for (size_t k = 0; k < n; ++k) v[k] = u[k][j];
        ker.push_back(v);
    }
    return hnf_rows(ker);
}

std::optional<QVec> solve_row_combination(const Mat& rows, const Vec& v) {
    size_t r = rows.size();
    if (r == 0) return is_zero(v) ? std::optional<QVec>(QVec{}) : std::nullopt;
    size_t n = rows[0].size();
    // one equation per ambient coordinate: sum_i x_i rows[i][j] = v[j]
    std::vector<QVec> aug(n, QVec(r + 1));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < r; ++i) aug[j][i] = Rat(rows[i][j]);
        aug[j][r] = Rat(v[j]);
    }
    size_t row = 0;
    std::vector<int> pivot_of_col(r, -1);
    for (size_t c = 0; c < r && row < n; ++c) {
        size_t p = row;
        while (p < n && aug[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(aug[row], aug[p]);
        for (size_t i = 0; i < n; ++i) {
            if (i == row || aug[i][c] == 0) continue;
            Rat f = aug[i][c] / aug[row][c];
            for (size_t k = c; k <= r; ++k) aug[i][k] -= f * aug[row][k];
        }
        pivot_of_col[c] = static_cast<int>(row);
        ++row;
    }
    QVec x(r, Rat(0));
    for (size_t c = 0; c < r; ++c) {
        if (pivot_of_col[c] < 0) return std::nullopt;
        size_t pr = static_cast<size_t>(pivot_of_col[c]);
        x[c] = aug[pr][r] / aug[pr][c];
    }
    for (size_t i = row; i < n; ++i)
        if (aug[i][r] != 0) return std::nullopt;
    return x;
}

std::optional<Vec> solve_integer_row_combination(const Mat& rows, const Vec& v) {
    auto q = solve_row_combination(rows, v);
    if (!q) return std::nullopt;
    Vec x(q->size());
    for (size_t i = 0; i < q->size(); ++i) {
        if (denominator((*q)[i]) != 1) return std::nullopt;
        x[i] = numerator((*q)[i]);
    }
    return x;
}

std::optional<Vec> SublatticeBasis::coordinates(const Vec& v) const {
    return solve_integer_row_combination(basis, v);
}

SublatticeBasis lattice_basis(const Mat& generators) {
    SublatticeBasis out;
    out.ambient = generators.empty() ? 0 : static_cast<int>(generators[0].size());
    out.basis = hnf_rows(generators);
    out.rank = static_cast<int>(out.basis.size());
    out.index = 1;
    if (out.rank > 0) {
        for (const Int& d : smith_divisors(out.basis)) out.index *= d;
    }
    return out;
}

Mat saturated_span_basis(const Mat& rows, int ambient) {
    Mat ker = kernel_basis(rows, ambient);
    return kernel_basis(ker, ambient);
}

Mat complete_to_unimodular(const Mat& saturated_rows, int ambient) {
    size_t n = static_cast<size_t>(ambient);
    size_t r = saturated_rows.size();
    if (r == 0) {
        Mat id(n, zero_vec(n));
        for (size_t i = 0; i < n; ++i) id[i][i] = 1;
        return id;
    }
    Mat cinv;
    std::vector<Int> diag = snf_core(saturated_rows, &cinv);
    if (diag.size() != r)
        fail("InternalError", "unimodular completion: dependent rows");
    for (const Int& d : diag)
        if (d != 1) fail("InternalError", "unimodular completion: lattice not saturated");
    // row lattice of input equals the lattice of the first r rows of cinv;
    // the remaining rows complete them to a basis of Z^n.
    Mat complement;
    for (size_t i = r; i < n; ++i) complement.push_back(cinv[i]);
    return complement;
}

} // namespace toric
