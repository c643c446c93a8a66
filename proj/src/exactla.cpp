#include "toric/exactla.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace toric {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor division, needed for HNF reduction into [0, pivot).
Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols) {
    if (cols.empty()) return IntMatrix(0, 0);
    IntMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows()) throw std::invalid_argument("ragged columns");
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

IntVec IntMatrix::row(std::size_t i) const {
    IntVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

IntVec IntMatrix::column(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

bool IntMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix transpose(const IntMatrix& a) {
    IntMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
    return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in multiply");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IntVec multiply(const IntMatrix& a, const IntVec& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("shape mismatch in multiply");
    IntVec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

IntMatrix scale(const Int& c, const IntMatrix& a) {
    IntMatrix r = a;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r.at(i, j) *= c;
    return r;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // exact by Bareiss
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

Int content(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntVec primitive(IntVec v) {
    Int g = content(v);
    if (g == 0) throw std::invalid_argument("primitive part of the zero vector");
    if (g != 1)
        for (Int& x : v) x /= g;
    return v;
}

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec scale(const Int& c, const IntVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("shape mismatch in dot");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec SmithDecomposition::invariant_factors() const {
    IntVec f;
    for (std::size_t i = 0; i < rank; ++i) f.push_back(D.at(i, i));
    return f;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithDecomposition s;
    s.D = a;
    s.U = IntMatrix::identity(m);
    s.V = IntMatrix::identity(n);
    IntMatrix& D = s.D;
    IntMatrix& U = s.U;
    IntMatrix& V = s.V;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < n; ++k) std::swap(D.at(i, k), D.at(j, k));
        for (std::size_t k = 0; k < m; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < m; ++k) std::swap(D.at(k, i), D.at(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(V.at(k, i), V.at(k, j));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& c) {  // row dst += c * row src
        for (std::size_t k = 0; k < n; ++k) D.at(dst, k) += c * D.at(src, k);
        for (std::size_t k = 0; k < m; ++k) U.at(dst, k) += c * U.at(src, k);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t k = 0; k < m; ++k) D.at(k, dst) += c * D.at(k, src);
        for (std::size_t k = 0; k < n; ++k) V.at(k, dst) += c * V.at(k, src);
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t k = 0; k < n; ++k) D.at(i, k) = -D.at(i, k);
        for (std::size_t k = 0; k < m; ++k) U.at(i, k) = -U.at(i, k);
    };

    const std::size_t bound = std::min(m, n);
    std::size_t t = 0;
    for (; t < bound; ++t) {
        // Minimal-absolute-value pivot over the trailing submatrix.
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Int& x = D.at(i, j);
                if (x == 0) continue;
                Int ax = abs_int(x);
                if (best == 0 || ax < best) {
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;  // trailing submatrix is zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D.at(i, t) == 0) continue;
                Int q = D.at(i, t) / D.at(t, t);
                add_row(i, t, -q);
                if (D.at(i, t) != 0) {
                    // Remainder became the smaller pivot.
                    swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D.at(t, j) == 0) continue;
                Int q = D.at(t, j) / D.at(t, t);
                add_col(j, t, -q);
                if (D.at(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;

            // Divisibility sweep: pivot must divide the trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D.at(t, t) < 0) negate_row(t);
    }
    s.rank = t;
    return s;
}

std::vector<IntVec> kernel_basis(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    // Columns of V past the rank span the saturated kernel (V unimodular).
    std::vector<IntVec> basis;
    for (std::size_t j = s.rank; j < a.cols(); ++j) basis.push_back(s.V.column(j));
    if (basis.empty()) return basis;
    IntMatrix h = hermite_row_form(IntMatrix::from_rows(basis));
    basis.clear();
    for (std::size_t i = 0; i < h.rows(); ++i) basis.push_back(h.row(i));
    return basis;
}

CokernelInvariants cokernel_invariants(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    CokernelInvariants c;
    c.free_rank = a.rows() - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) > 1) c.torsion.push_back(s.D.at(i, i));
    return c;
}

std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank; }

IntMatrix hermite_row_form(IntMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t k = 0; k < cols; ++k) m.at(dst, k) += c * m.at(src, k);
    };
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        // Reduce rows >= r to a single nonzero entry in this column.
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (m.at(i, col) == 0) continue;
                if (best == rows || abs_int(m.at(i, col)) < abs_int(m.at(best, col))) best = i;
            }
            if (best == rows) break;  // column zero below r
            if (best != r)
                for (std::size_t k = 0; k < cols; ++k) std::swap(m.at(r, k), m.at(best, k));
            bool lone = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m.at(i, col) == 0) continue;
                Int q = m.at(i, col) / m.at(r, col);
                add_row(i, r, -q);
                if (m.at(i, col) != 0) lone = false;
            }
            if (lone) break;
        }
        if (m.at(r, col) == 0) continue;
        if (m.at(r, col) < 0)
            for (std::size_t k = 0; k < cols; ++k) m.at(r, k) = -m.at(r, k);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(m.at(i, col), m.at(r, col));
            if (q != 0) add_row(i, r, -q);
        }
        ++r;
    }
    // Drop zero rows (rows at index >= r are zero by construction).
    IntMatrix h(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) h.at(i, j) = m.at(i, j);
    return h;
}

std::optional<RatVec> solve_rational(const IntMatrix& a, const IntVec& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("shape mismatch in solve");
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<RatVec> t(m, RatVec(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = Rat(a.at(i, j));
        t[i][n] = Rat(b[i]);
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t p = r;
        while (p < m && t[p][col] == 0) ++p;
        if (p == m) continue;
        std::swap(t[p], t[r]);
        Rat inv = t[r][col];
        for (std::size_t j = col; j <= n; ++j) t[r][j] /= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || t[i][col] == 0) continue;
            Rat f = t[i][col];
            for (std::size_t j = col; j <= n; ++j) t[i][j] -= f * t[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (t[i][n] != 0) return std::nullopt;
    RatVec x(n, Rat(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = t[i][n];
    return x;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    Int det = determinant(a);
    if (det != 1 && det != -1) throw std::invalid_argument("matrix is not unimodular");
    const std::size_t n = a.rows();
    IntMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVec e(n);
        e[j] = 1;
        auto x = solve_rational(a, e);
        for (std::size_t i = 0; i < n; ++i) {
            const Rat& v = (*x)[i];
            if (boost::multiprecision::denominator(v) != 1)
                throw std::invalid_argument("matrix is not unimodular");
            inv.at(i, j) = boost::multiprecision::numerator(v);
        }
    }
    return inv;
}

std::vector<IntVec> saturated_span_basis(const std::vector<IntVec>& vectors) {
    if (vectors.empty()) return {};
    IntMatrix b = IntMatrix::from_rows(vectors);
    SmithDecomposition s = smith_normal_form(b);
    // row lattice * V has support in the first rank coordinates; its
    // saturation is spanned by the matching rows of V^{-1}
    IntMatrix vinv = unimodular_inverse(s.V);
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < s.rank; ++i) rows.push_back(vinv.row(i));
    IntMatrix h = hermite_row_form(IntMatrix::from_rows(rows));
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        IntVec r = h.row(i);
        if (!is_zero(r)) out.push_back(std::move(r));
    }
    return out;
}

IntVec lattice_coordinates(const std::vector<IntVec>& basis, const IntVec& v) {
    auto sol = solve_rational(transpose(IntMatrix::from_rows(basis)), v);
    if (!sol) throw std::invalid_argument("vector outside the lattice span");
    IntVec out;
    out.reserve(sol->size());
    for (const Rat& q : *sol) {
        if (boost::multiprecision::denominator(q) != 1)
            throw std::invalid_argument("vector outside the integer lattice span");
        out.push_back(boost::multiprecision::numerator(q));
    }
    return out;
}

}  // namespace toric
