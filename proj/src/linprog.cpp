#include "idealab/submeasure.hpp"

#include <stdexcept>
#include <vector>

namespace idealab {

namespace {

// Full-tableau primal simplex for max c^T x s.t. Ax <= b, x >= 0 with b >= 0
// (so the slack basis is feasible). Exact rational pivoting, Bland's rule.
struct SimplexResult {
    Rat value;
    std::vector<Rat> x;
};

SimplexResult simplex_max(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                          const std::vector<Rat>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    const std::size_t cols = n + m + 1;

    std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(cols, Rat(0)));
    for (std::size_t j = 0; j < n; ++j) t[0][j] = -c[j];
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i + 1][j] = a[i][j];
        t[i + 1][n + i] = 1;
        t[i + 1][cols - 1] = b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    while (true) {
        // Bland: smallest improving column.
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            if (t[0][j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave_row = 0;
        bool found = false;
        Rat best_ratio;
        for (std::size_t i = 1; i <= m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][cols - 1] / t[i][enter];
            if (!found || ratio < best_ratio ||
                (ratio == best_ratio && basis[i - 1] < basis[leave_row - 1])) {
                found = true;
                best_ratio = ratio;
                leave_row = i;
            }
        }
        if (!found) throw std::logic_error("unbounded linear program");

        Rat piv = t[leave_row][enter];
        for (std::size_t j = 0; j < cols; ++j) t[leave_row][j] /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave_row) continue;
            if (t[i][enter] == 0) continue;
            Rat factor = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave_row][j];
        }
        basis[leave_row - 1] = enter;
    }

    SimplexResult res;
    res.x.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) res.x[basis[i]] = t[i + 1][cols - 1];
    }
    res.value = 0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

} // namespace

Rat nonpath_gap(const Submeasure& phi, const FinSet& f_raw) {
    FinSet f = fs_normalize(f_raw);
    const std::size_t d = f.size();
    if (d > 15) throw std::invalid_argument("nonpath_gap limited to |F| <= 15");
    if (d == 0) return Rat(0);

    const std::size_t full = (std::size_t{1} << d) - 1;

    // phi on every nonempty subset, indexed by bitmask over f.
    std::vector<Rat> phi_of(full + 1, Rat(0));
    {
        FinSet subset;
        for (std::size_t mask = 1; mask <= full; ++mask) {
            subset.clear();
            for (std::size_t i = 0; i < d; ++i) {
                if (mask & (std::size_t{1} << i)) subset.push_back(f[i]);
            }
            phi_of[mask] = phi.eval(subset);
        }
    }

    // Constraint generation over the 2^|F|-row system: start from singletons
    // plus the full set, add the most violated subset until none violates.
    std::vector<std::size_t> active;
    std::vector<bool> in_active(full + 1, false);
    auto add_mask = [&](std::size_t mask) {
        if (!in_active[mask]) {
            in_active[mask] = true;
            active.push_back(mask);
        }
    };
    for (std::size_t i = 0; i < d; ++i) add_mask(std::size_t{1} << i);
    add_mask(full);

    std::vector<Rat> c(d, Rat(1));
    SimplexResult sol;
    while (true) {
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        a.reserve(active.size());
        b.reserve(active.size());
        for (std::size_t mask : active) {
            std::vector<Rat> row(d, Rat(0));
            for (std::size_t i = 0; i < d; ++i) {
                if (mask & (std::size_t{1} << i)) row[i] = 1;
            }
            a.push_back(std::move(row));
            b.push_back(phi_of[mask]);
        }
        sol = simplex_max(a, b, c);

        // Subset sums of the candidate via one add per mask.
        std::vector<Rat> sum(full + 1, Rat(0));
        for (std::size_t mask = 1; mask <= full; ++mask) {
            std::size_t low = mask & (~mask + 1);
            std::size_t idx = 0;
            while ((std::size_t{1} << idx) != low) ++idx;
            sum[mask] = sum[mask ^ low] + sol.x[idx];
        }
        std::size_t worst = 0;
        Rat worst_violation = 0;
        for (std::size_t mask = 1; mask <= full; ++mask) {
            Rat violation = sum[mask] - phi_of[mask];
            if (violation > worst_violation) {
                worst_violation = violation;
                worst = mask;
            }
        }
        if (worst == 0) break;
        add_mask(worst);
    }

    return phi_of[full] - sol.value;
}

} // namespace idealab
