#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vtlab/core.hpp"

namespace vtlab {



using MetricFn = std::function<Mat<Dual2>(const Vec<Dual2>&)>;
using VectorFn = std::function<Vec<Dual2>(const Vec<Dual2>&)>;
using ScalarFn = std::function<Dual2(const Vec<Dual2>&)>;
// Fully antisymmetric 3-form components w_ijk in coordinates.
using FormFn = std::function<Arr3<Dual2>(const Vec<Dual2>&)>;
// Spinor components with respect to the chart's Gram-Schmidt frame.
using SpinorFn = std::function<Spinor<Dual2>(const Vec<Dual2>&)>;
using WarpFn = std::function<Dual2(const Dual2&)>;

struct Box {
    Point lo{};
    Point hi{};
};

struct Chart;

// Describes eps dt^2 + f(t)^2 g_F; stored on charts built from it.
struct WarpInfo {
    std::shared_ptr<const Chart> fiber;  // Riemannian, dim n - 1
    std::string fiber_tag;               // used in the chart id
    std::string warp_name;
    WarpFn warp;
    WarpFn warp_dot;  // derivative of warp, authored alongside it
    int eps = 1;
    std::string fiber_form;  // fiber 3-form name, empty for none
    double t_lo = -1.0;
    double t_hi = 1.0;
    // The warped 3-form is f^2 times the fiber form, so that its (2,1)
    // connection difference is the pulled-back fiber one.
    bool scale_form = true;
};

struct SpinorField {
    SpinorFn fn;
    std::string vfield;  // V for which the field is parallel ("" for V = 0)
    std::string note;
};

struct Chart {
    std::string id;
    std::vector<std::string> aliases;
    std::string description;
    int dim = 2;
    Signature signature{1, 1, 1, 1};
    MetricFn metric;
    std::map<std::string, VectorFn> vfields;
    std::map<std::string, ScalarFn> scalars;
    std::map<std::string, FormFn> forms;
    std::map<std::string, SpinorField> spinors;
    Point period{};  // 0 means not periodic
    Box domain;
    std::optional<WarpInfo> warp;

    bool riemannian() const;
    bool fully_periodic() const;
    int index() const;  // number of negative signs

    const VectorFn& vfield(const std::string& name) const;
    const ScalarFn& scalar(const std::string& name) const;
    const FormFn& form(const std::string& name) const;
};

struct Jet2 {
    double value = 0.0;
    Vec<double> grad{};
    Mat<double> hess{};
};

Jet2 to_jet(const Dual2& x);

// Coordinates of x seeded for second-order differentiation.
Vec<Dual2> seed_point(const Point& x);

Mat<Jet2> eval_metric_jet(const Chart& chart, const Point& x);

// Metric with exact derivatives, checked for degeneracy.
Mat<Dual2> metric_dual(const Chart& chart, const Vec<Dual2>& xs);

// e[a][i] is coordinate component i of frame vector e_a.
struct FramePoint {
    Point point{};
    int n = 0;
    Signature eps{1, 1, 1, 1};
    Mat<double> e{};
    Mat<double> coframe{};  // coframe[a][i] = theta^a_i, theta^a(e_b) = delta
};

// Signature-aware Gram-Schmidt on the coordinate frame in chart order.
template <typename T>
Mat<T> gram_schmidt(const Mat<T>& g, int n, Signature& eps, double scale) {
    Mat<T> e = zero_mat<T>();
    for (int a = 0; a < n; ++a) {
        Vec<T> u;
        u.fill(T(0.0));
        u[a] = T(1.0);
        for (int b = 0; b < a; ++b) {
            T c(0.0);
            for (int j = 0; j < n; ++j) c = c + g[a][j] * e[b][j];
            c = c * double(eps[b]);
            for (int i = 0; i < n; ++i) u[i] = u[i] - c * e[b][i];
        }
        T q(0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q = q + g[i][j] * u[i] * u[j];
        const double qp = primal(q);
        if (std::abs(qp) < 1e-12 * scale) {
            throw Error(ErrorKind::FrameConstructionFailed,
                        "vanishing leading minor at coordinate " + std::to_string(a));
        }
        eps[a] = qp > 0 ? 1 : -1;
        using std::sqrt;
        const T len = sqrt(qp > 0 ? q : T(-1.0) * q);
        for (int i = 0; i < n; ++i) e[a][i] = u[i] / len;
    }
    for (int a = n; a < kMaxDim; ++a) eps[a] = 1;
    return e;
}

double metric_scale(const Mat<double>& g, int n);

FramePoint orthonormal_frame(const Chart& chart, const Point& x);

// Uniform draws from the sample box, reproducible for a given seed.
std::vector<Point> sample_points(const Chart& chart, int count, std::uint64_t seed);

// Chart with metric e^{2f} g; everything else copied.
Chart conformal_chart(const Chart& chart, const ScalarFn& f, const std::string& fname);

// sign * grad f. The result carries exact values and first derivatives; its
// second-order parts are zero, so it must only be consumed to first order.
VectorFn gradient_field(const Chart& chart, const ScalarFn& f, double sign);

// Largest violation of the chart invariants (symmetry, signature, periodicity)
// over the given points.
double chart_invariant_defect(const Chart& chart, const std::vector<Point>& pts);

}  // namespace vtlab
