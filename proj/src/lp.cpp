#include "toric/lp.hpp"

#include <stdexcept>

namespace toric {

std::optional<RatVec> feasible_nonnegative(const std::vector<RatVec>& rows, const RatVec& rhs) {
    const std::size_t m = rows.size();
    if (rhs.size() != m) throw std::invalid_argument("shape mismatch in LP");
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    if (m == 0) return RatVec(n, Rat(0));

    // Tableau columns: n originals, m artificials, rhs. Basis starts artificial.
    const std::size_t width = n + m + 1;
    std::vector<RatVec> t(m, RatVec(width, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("ragged LP rows");
        bool flip = rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rat(-rows[i][j]) : rows[i][j];
        t[i][n + i] = 1;
        t[i][width - 1] = flip ? Rat(-rhs[i]) : rhs[i];
    }
    // Phase-1 objective: minimize the artificial sum; reduced-cost row below.
    RatVec z(width, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < width; ++j)
            if (j < n || j == width - 1) z[j] += t[i][j];

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: smallest improving column.
        std::size_t enter = width - 1;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (z[j] > 0) {
                enter = j;
                break;
            }
        if (enter == width - 1) break;

        std::size_t leave = m;
        Rat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][width - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) throw std::logic_error("phase-1 LP unbounded");

        Rat piv = t[leave][enter];
        for (std::size_t j = 0; j < width; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        if (z[enter] != 0) {
            Rat f = z[enter];
            for (std::size_t j = 0; j < width; ++j) z[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    if (z[width - 1] != 0) return std::nullopt;  // artificial residue: infeasible
    RatVec x(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][width - 1];
    return x;
}

std::optional<RatVec> feasible_at_least(const std::vector<RatVec>& rows, const RatVec& rhs) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    // x = p - q with p, q >= 0, surplus s >= 0: rows*(p - q) - s = rhs.
    std::vector<RatVec> eq(m, RatVec(2 * n + m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            eq[i][j] = rows[i][j];
            eq[i][n + j] = -rows[i][j];
        }
        eq[i][2 * n + i] = -1;
    }
    auto sol = feasible_nonnegative(eq, rhs);
    if (!sol) return std::nullopt;
    RatVec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = (*sol)[j] - (*sol)[n + j];
    return x;
}

}  // namespace toric
