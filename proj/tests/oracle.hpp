#pragma once
// Independent reference computations shared by the unit tests. Nothing here
// calls the engine's curvature or connection code.

#include <algorithm>
#include <cmath>
#include <functional>

#include "vtlab/chart.hpp"

namespace oracle {

using vtlab::Mat;
using vtlab::Point;

inline Mat<double> metric_value(const vtlab::Chart& c, const Point& x) {
    Mat<double> g{};
    vtlab::Vec<vtlab::Dual2> xs;
    for (int i = 0; i < vtlab::kMaxDim; ++i) xs[i] = vtlab::Dual2(x[i]);
    const auto gd = c.metric(xs);
    for (int i = 0; i < c.dim; ++i)
        for (int j = 0; j < c.dim; ++j) g[i][j] = vtlab::primal(gd[i][j]);
    return g;
}

// Fourth-order central difference of a scalar function along axis k.
inline double fd(const std::function<double(const Point&)>& f, const Point& x, int k,
                 double h = 1e-3) {
    Point p = x;
    auto at = [&](double s) {
        p[k] = x[k] + s * h;
        return f(p);
    };
    return (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
}

inline double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); }

// Christoffel symbols Gamma^k_ij from finite differences of the metric.
inline vtlab::Arr3<double> christoffel_fd(const vtlab::Chart& c, const Point& x) {
    const int n = c.dim;
    vtlab::Arr3<double> dg{};  // dg[k][i][j] = d_k g_ij
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dg[k][i][j] = fd([&](const Point& p) { return metric_value(c, p)[i][j]; }, x, k);
    const auto g = metric_value(c, x);
    const auto gi = vtlab::inverse(g, n);
    vtlab::Arr3<double> gam{};
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0;
                for (int l = 0; l < n; ++l)
                    s += gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                gam[k][i][j] = 0.5 * s;
            }
    return gam;
}

}  // namespace oracle
