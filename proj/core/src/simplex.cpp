#include "simplex.hpp"

#include <stdexcept>

namespace pir::detail {

LpResult solve_min_lp(const std::vector<std::vector<BigRational>>& A,
                      const std::vector<BigRational>& b,
                      const std::vector<BigRational>& c) {
    const std::size_t m = A.size();     // primal constraints = dual variables
    const std::size_t n = c.size();     // primal variables = dual constraints
    for (const auto& row : A)
        if (row.size() != n) throw std::invalid_argument("LP matrix shape mismatch");
    if (b.size() != m) throw std::invalid_argument("LP rhs shape mismatch");
    for (const auto& cj : c)
        if (cj < BigRational(0)) throw std::invalid_argument("solver needs c >= 0");

    // dual tableau: n rows, columns = m dual vars + n slacks, then RHS
    const std::size_t cols = m + n;
    std::vector<std::vector<BigRational>> T(n, std::vector<BigRational>(cols + 1, BigRational(0)));
    std::vector<std::size_t> basis(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) T[j][i] = A[i][j];
        T[j][m + j] = BigRational(1);
        T[j][cols] = c[j];
        basis[j] = m + j;
    }
    auto objcoef = [&](std::size_t var) {
        return var < m ? b[var] : BigRational(0);
    };

    while (true) {
        // reduced profit c_j - z_j for the max problem; Bland's rule
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            BigRational z(0);
            for (std::size_t r = 0; r < n; ++r) z += objcoef(basis[r]) * T[r][j];
            if (objcoef(j) - z > BigRational(0)) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;  // optimal

        std::size_t leave = n;
        BigRational best_ratio(0);
        for (std::size_t r = 0; r < n; ++r) {
            if (T[r][enter] <= BigRational(0)) continue;
            const BigRational ratio = T[r][cols] / T[r][enter];
            if (leave == n || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == n) return {};  // dual unbounded: primal infeasible

        const BigRational pivot = T[leave][enter];
        for (auto& v : T[leave]) v /= pivot;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == leave || T[r][enter] == BigRational(0)) continue;
            const BigRational factor = T[r][enter];
            for (std::size_t j = 0; j <= cols; ++j) T[r][j] -= factor * T[leave][j];
        }
        basis[leave] = enter;
    }

    LpResult res;
    res.optimal = true;
    res.y.assign(m, BigRational(0));
    for (std::size_t r = 0; r < n; ++r) {
        res.objective += objcoef(basis[r]) * T[r][cols];
        if (basis[r] < m) res.y[basis[r]] = T[r][cols];
    }
    // primal values are the reduced costs of the slack columns
    res.x.assign(n, BigRational(0));
    for (std::size_t j = 0; j < n; ++j) {
        BigRational z(0);
        for (std::size_t r = 0; r < n; ++r) z += objcoef(basis[r]) * T[r][m + j];
        res.x[j] = z;
    }
    return res;
}

} // namespace pir::detail
