#include "vtlab/parallel.hpp"

#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vtlab {

int worker_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void for_each_index(int count, const std::function<void(int)>& f, Exec mode) {
    if (mode == Exec::Serial) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        try {
            f(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

double trapezoid(const std::function<double(const Point&)>& f, int dim, const Point& period,
                 int m, Exec mode, bool mean) {
    int total = 1;
    for (int a = 0; a < dim; ++a) total *= m;
    const std::vector<double> vals = map_indices<double>(
        total,
        [&](int idx) {
            Point p{};
            int r = idx;
            for (int a = 0; a < dim; ++a) {
                p[a] = period[a] * (r % m) / m;
                r /= m;
            }
            return f(p);
        },
        mode);
    double s = 0.0;
    for (double v : vals) s += v;
    double w = 1.0 / total;
    if (!mean)
        for (int a = 0; a < dim; ++a) w *= period[a];
    return s * w;
}

CVecX sparse_apply(const SpMat& a, const CVecX& x, Exec mode) {
    CVecX y(a.rows());
    const int rows = static_cast<int>(a.rows());
    auto row = [&](int r) {
        std::complex<double> s = 0.0;
        for (SpMat::InnerIterator it(a, r); it; ++it) s += it.value() * x[it.col()];
        y[r] = s;
    };
    if (mode == Exec::Serial) {
        for (int r = 0; r < rows; ++r) row(r);
    } else {
#pragma omp parallel for schedule(static)
        for (int r = 0; r < rows; ++r) row(r);
    }
    return y;
}

}  // namespace vtlab
