#include "vtlab/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vtlab/core.hpp"

namespace vtlab {

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    const int m = static_cast<int>(cost[0].size());
    if (m < n) throw Error(ErrorKind::Config, "assignment needs at least as many columns as rows");
    const double inf = std::numeric_limits<double>::infinity();
    // potentials u (rows), v (cols); p[j] = row matched to column j, 1-based
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> ans(n, -1);
    for (int j = 1; j <= m; ++j)
        if (p[j] != 0) ans[p[j] - 1] = j - 1;
    return ans;
}

Pairing pair_spectra(const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& pool) {
    std::vector<std::vector<double>> cost(a.size(), std::vector<double>(pool.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < pool.size(); ++j) cost[i][j] = std::abs(a[i] - pool[j]);
    Pairing out;
    out.match = hungarian(cost);
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = cost[i][out.match[i]];
        out.total += d;
        out.max_distance = std::max(out.max_distance, d);
    }
    return out;
}

}  // namespace vtlab
