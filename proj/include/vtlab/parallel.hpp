#pragma once

#include <Eigen/Sparse>
#include <complex>
#include <exception>
#include <functional>
#include <vector>

#include "vtlab/core.hpp"

namespace vtlab {

using SpMat = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;
using CVecX = Eigen::VectorXcd;

enum class Exec { Serial, Parallel };

// Applies f to 0..count-1 and stores the results in order. The parallel path
// must produce the same vector as the serial one; exceptions thrown by f are
// rethrown on the calling thread (first one wins).
void for_each_index(int count, const std::function<void(int)>& f, Exec mode);

template <typename R>
std::vector<R> map_indices(int count, const std::function<R(int)>& f, Exec mode) {
    std::vector<R> out(count);
    for_each_index(count, [&](int i) { out[i] = f(i); }, mode);
    return out;
}

// Tensor-product trapezoid rule on the box [0, period_i)^dim with m points per
// axis, normalized by the box volume when `mean` is set. Values are summed in
// index order so both modes give identical bits.
double trapezoid(const std::function<double(const Point&)>& f, int dim, const Point& period,
                 int m, Exec mode, bool mean = false);

// y = A x, row by row.
CVecX sparse_apply(const SpMat& a, const CVecX& x, Exec mode);

int worker_threads();

}  // namespace vtlab
