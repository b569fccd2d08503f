#include "vtlab/chart.hpp"

#include <random>

namespace vtlab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateMetric: return "DegenerateMetric";
        case ErrorKind::FrameConstructionFailed: return "FrameConstructionFailed";
        case ErrorKind::BasisMismatch: return "BasisMismatch";
        case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::UnsupportedChart: return "UnsupportedChart";
        case ErrorKind::InvalidWarp: return "InvalidWarp";
        case ErrorKind::DivergenceNotZero: return "DivergenceNotZero";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::NotParallel: return "NotParallel";
        case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
        case ErrorKind::SolverFailure: return "SolverFailure";
        case ErrorKind::UnknownId: return "UnknownId";
        case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

bool Chart::riemannian() const { return index() == 0; }

bool Chart::fully_periodic() const {
    for (int i = 0; i < dim; ++i)
        if (period[i] <= 0.0) return false;
    return true;
}

int Chart::index() const {
    int k = 0;
    for (int i = 0; i < dim; ++i) k += signature[i] < 0 ? 1 : 0;
    return k;
}

namespace {
template <typename M>
const typename M::mapped_type& lookup(const M& m, const std::string& name, const Chart& c,
                                      const char* what) {
    auto it = m.find(name);
    if (it == m.end()) {
        throw Error(ErrorKind::UnknownId,
                    std::string(what) + " '" + name + "' not defined on chart " + c.id);
    }
    return it->second;
}
}  // namespace

const VectorFn& Chart::vfield(const std::string& name) const {
    return lookup(vfields, name, *this, "vector field");
}
const ScalarFn& Chart::scalar(const std::string& name) const {
    return lookup(scalars, name, *this, "scalar");
}
const FormFn& Chart::form(const std::string& name) const {
    return lookup(forms, name, *this, "3-form");
}

Jet2 to_jet(const Dual2& x) {
    Jet2 j;
    j.value = x.v.v;
    for (int i = 0; i < kMaxDim; ++i) {
        j.grad[i] = x.v.d[i];
        for (int k = 0; k < kMaxDim; ++k) j.hess[i][k] = 0.5 * (x.d[i].d[k] + x.d[k].d[i]);
    }
    return j;
}

Vec<Dual2> seed_point(const Point& x) {
    Vec<Dual2> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = seed_variable_as<Dual2>(x[i], i);
    return r;
}

double metric_scale(const Mat<double>& g, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s = std::max(s, std::abs(g[i][j]));
    return s;
}

Mat<Dual2> metric_dual(const Chart& chart, const Vec<Dual2>& xs) {
    Mat<Dual2> g = chart.metric(xs);
    Mat<double> gp;
    for (int i = 0; i < kMaxDim; ++i)
        for (int j = 0; j < kMaxDim; ++j) gp[i][j] = primal(g[i][j]);
    const int n = chart.dim;
    const double scale = metric_scale(gp, n);
    const double det = determinant(gp, n);
    if (!(scale > 0.0) || std::abs(det) < 1e-10 * std::pow(scale, n)) {
        throw Error(ErrorKind::DegenerateMetric, "metric degenerate on chart " + chart.id);
    }
    return g;
}

Mat<Jet2> eval_metric_jet(const Chart& chart, const Point& x) {
    const Mat<Dual2> g = metric_dual(chart, seed_point(x));
    Mat<Jet2> r{};
    for (int i = 0; i < chart.dim; ++i)
        for (int j = 0; j < chart.dim; ++j) r[i][j] = to_jet(g[i][j]);
    return r;
}

FramePoint orthonormal_frame(const Chart& chart, const Point& x) {
    const Mat<Dual2> gd = metric_dual(chart, seed_point(x));
    Mat<double> g;
    for (int i = 0; i < kMaxDim; ++i)
        for (int j = 0; j < kMaxDim; ++j) g[i][j] = primal(gd[i][j]);
    FramePoint fp;
    fp.point = x;
    fp.n = chart.dim;
    fp.e = gram_schmidt(g, chart.dim, fp.eps, metric_scale(g, chart.dim));
    for (int a = 0; a < chart.dim; ++a) {
        if (fp.eps[a] != chart.signature[a]) {
            throw Error(ErrorKind::FrameConstructionFailed,
                        "frame signature does not match chart order on " + chart.id);
        }
    }
    // theta^a_i = eps_a g_ij e_a^j
    fp.coframe = zero_mat<double>();
    for (int a = 0; a < chart.dim; ++a)
        for (int i = 0; i < chart.dim; ++i) {
            double s = 0.0;
            for (int j = 0; j < chart.dim; ++j) s += g[i][j] * fp.e[a][j];
            fp.coframe[a][i] = fp.eps[a] * s;
        }
    return fp;
}

std::vector<Point> sample_points(const Chart& chart, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> pts;
    pts.reserve(count);
    for (int s = 0; s < count; ++s) {
        Point p{};
        for (int i = 0; i < chart.dim; ++i) {
            // 53-bit uniform in [0,1): independent of the standard library's
            // distribution implementation.
            const double u = double(rng() >> 11) * 0x1.0p-53;
            p[i] = chart.domain.lo[i] + u * (chart.domain.hi[i] - chart.domain.lo[i]);
        }
        pts.push_back(p);
    }
    return pts;
}

Chart conformal_chart(const Chart& chart, const ScalarFn& f, const std::string& fname) {
    Chart c = chart;
    c.id = chart.id + "~conf(" + fname + ")";
    c.aliases.clear();
    c.description = "e^{2f} times " + chart.id + ", f = " + fname;
    c.warp.reset();
    c.spinors.clear();
    const MetricFn base = chart.metric;
    c.metric = [base, f](const Vec<Dual2>& xs) {
        Mat<Dual2> g = base(xs);
        const Dual2 w = exp(2.0 * f(xs));
        for (auto& row : g)
            for (auto& x : row) x = w * x;
        return g;
    };
    return c;
}

VectorFn gradient_field(const Chart& chart, const ScalarFn& f, double sign) {
    const MetricFn metric = chart.metric;
    const int n = chart.dim;
    return [metric, f, sign, n](const Vec<Dual2>& xs) {
        const Mat<Dual1> ginv = inverse(value_part(metric(xs)), n);
        const Dual2 fx = f(xs);
        Vec<Dual2> v;
        for (int i = 0; i < kMaxDim; ++i) {
            Dual1 s(0.0);
            for (int j = 0; j < n && i < n; ++j) s += ginv[i][j] * fx.d[j];
            s = sign * s;
            v[i].v = s;
            for (int k = 0; k < kMaxDim; ++k) v[i].d[k] = Dual1(s.d[k]);
        }
        return v;
    };
}

double chart_invariant_defect(const Chart& chart, const std::vector<Point>& pts) {
    const int n = chart.dim;
    double defect = 0.0;
    auto metric_at = [&](const Point& p) {
        const Mat<Dual2> gd = chart.metric(seed_point(p));
        Mat<double> g{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g[i][j] = primal(gd[i][j]);
        return g;
    };
    for (const Point& p : pts) {
        const Mat<double> g = metric_at(p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) defect = std::max(defect, std::abs(g[i][j] - g[j][i]));
        try {
            (void)orthonormal_frame(chart, p);
        } catch (const Error&) {
            defect = std::max(defect, 1.0);
        }
        for (int k = 0; k < n; ++k) {
            if (chart.period[k] <= 0.0) continue;
            Point q = p;
            q[k] += chart.period[k];
            const Mat<double> gq = metric_at(q);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) defect = std::max(defect, std::abs(g[i][j] - gq[i][j]));
            for (const auto& [name, fn] : chart.vfields) {
                const Vec<Dual2> a = fn(seed_point(p));
                const Vec<Dual2> b = fn(seed_point(q));
                for (int i = 0; i < n; ++i)
                    defect = std::max(defect, std::abs(primal(a[i]) - primal(b[i])));
            }
        }
    }
    return defect;
}

}  // namespace vtlab
