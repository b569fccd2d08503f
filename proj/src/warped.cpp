#include "vtlab/warped.hpp"

namespace vtlab {

WarpJet warp_jet(const WarpFn& warp, double t) {
    const Dual2 f = warp(seed_variable_as<Dual2>(t, 0));
    return {f.v.v, f.v.d[0], f.d[0].d[0]};
}

std::string warped_id(const WarpedSpec& spec) {
    return "warped:" + spec.fiber_tag + ":" + spec.warp_name + ":" + (spec.eps > 0 ? "+1" : "-1");
}

namespace {
Vec<Dual2> fiber_coords(const Vec<Dual2>& xs, int m) {
    Vec<Dual2> y;
    for (int i = 0; i < kMaxDim; ++i) y[i] = i < m ? xs[i + 1] : Dual2(0.0);
    return y;
}

Vec<Dual2> along_t(const Dual2& c) {
    Vec<Dual2> v;
    v.fill(Dual2(0.0));
    v[0] = c;
    return v;
}
}  // namespace

Chart make_warped(const WarpedSpec& spec) {
    if (!spec.fiber || !spec.warp || !spec.warp_dot) {
        throw Error(ErrorKind::InvalidWarp, "warped spec needs a fiber and a warp function");
    }
    const Chart& fib = *spec.fiber;
    if (!fib.riemannian() || fib.dim + 1 > kMaxDim) {
        throw Error(ErrorKind::InvalidWarp, "fiber must be Riemannian of dimension <= 3");
    }
    if (!(spec.t_hi > spec.t_lo)) throw Error(ErrorKind::InvalidWarp, "empty t-domain");
    for (int s = 0; s <= 200; ++s) {
        const double t = spec.t_lo + (spec.t_hi - spec.t_lo) * s / 200.0;
        const double f = warp_jet(spec.warp, t).f;
        if (!(f > 0.0)) {
            throw Error(ErrorKind::InvalidWarp,
                        "warp " + spec.warp_name + " not positive at t = " + std::to_string(t));
        }
    }
    if (!spec.fiber_form.empty()) (void)fib.form(spec.fiber_form);

    const int m = fib.dim;
    Chart c;
    c.id = warped_id(spec);
    c.dim = m + 1;
    c.signature = {spec.eps, 1, 1, 1};
    c.description = std::string(spec.eps > 0 ? "" : "Lorentzian ") + "warped product over " +
                    fib.id + " with warp " + spec.warp_name;
    c.domain.lo[0] = spec.t_lo;
    c.domain.hi[0] = spec.t_hi;
    for (int i = 0; i < m; ++i) {
        c.domain.lo[i + 1] = fib.domain.lo[i];
        c.domain.hi[i + 1] = fib.domain.hi[i];
        c.period[i + 1] = fib.period[i];
    }
    const auto fiber = spec.fiber;
    const WarpFn warp = spec.warp;
    const WarpFn warp_dot = spec.warp_dot;
    const int eps = spec.eps;

    c.metric = [fiber, warp, eps, m](const Vec<Dual2>& xs) {
        const Mat<Dual2> gf = fiber->metric(fiber_coords(xs, m));
        const Dual2 f = warp(xs[0]);
        const Dual2 f2 = f * f;
        Mat<Dual2> g = zero_mat<Dual2>();
        g[0][0] = Dual2(double(eps));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g[i + 1][j + 1] = f2 * gf[i][j];
        return g;
    };
    c.vfields["dt"] = [](const Vec<Dual2>&) { return along_t(Dual2(1.0)); };
    c.vfields["minus_dt"] = [](const Vec<Dual2>&) { return along_t(Dual2(-1.0)); };
    c.vfields["canonical"] = [warp, warp_dot, eps](const Vec<Dual2>& xs) {
        return along_t(double(eps) * warp_dot(xs[0]) / warp(xs[0]));
    };
    c.vfields["perturbed"] = [warp, warp_dot, eps](const Vec<Dual2>& xs) {
        return along_t(double(eps) * warp_dot(xs[0]) / warp(xs[0]) + Dual2(0.1));
    };
    c.vfields["t2"] = [](const Vec<Dual2>& xs) { return along_t(xs[0] * xs[0]); };
    c.scalars["warp"] = [warp](const Vec<Dual2>& xs) { return warp(xs[0]); };
    c.scalars["neg_log_warp"] = [warp](const Vec<Dual2>& xs) { return -log(warp(xs[0])); };
    if (!spec.fiber_form.empty()) {
        const FormFn wf = fib.form(spec.fiber_form);
        const bool scaled = spec.scale_form;
        c.forms["omega"] = [wf, warp, scaled, m](const Vec<Dual2>& xs) {
            const Arr3<Dual2> w = wf(fiber_coords(xs, m));
            const Dual2 f = warp(xs[0]);
            const Dual2 s = scaled ? f * f : Dual2(1.0);
            Arr3<Dual2> r = zero_arr3<Dual2>();
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k) r[i + 1][j + 1][k + 1] = s * w[i][j][k];
            return r;
        };
    }
    c.warp = spec;
    return c;
}

WarpedSpec product_spec(const WarpedSpec& spec) {
    WarpedSpec p = spec;
    p.warp_name = "one";
    p.warp = [](const Dual2&) { return Dual2(1.0); };
    p.warp_dot = [](const Dual2&) { return Dual2(0.0); };
    return p;
}

WarpedSpec spec_of(const Chart& warped) {
    if (!warped.warp) throw Error(ErrorKind::UnsupportedChart, warped.id + " is not a warped chart");
    return *warped.warp;
}

Tensor2 to_coordinates(const Tensor2& t, const PointData& pd) {
    const int n = pd.n;
    const Mat<double> g = primal(pd.g);
    Mat<double> theta = zero_mat<double>();
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += g[i][j] * pd.ev[a][j];
            theta[a][i] = pd.eps[a] * s;
        }
    Tensor2 r = zero_tensor2(n, Basis::Coordinate);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) s += theta[a][i] * theta[b][j] * t.c[a][b];
            r.c[i][j] = s;
        }
    return r;
}

Tensor2 ricci_coord(const Chart& chart, const Point& x, const TorsionSpec& spec) {
    const PointData pd = point_data(chart, x);
    return to_coordinates(ricci(pd, spec), pd);
}

Tensor2 ricci_warped_closed_form(const WarpedSpec& spec, const Point& x) {
    const Chart& fib = *spec.fiber;
    const int m = fib.dim;
    const int n = m + 1;
    Point y{};
    for (int i = 0; i < m; ++i) y[i] = x[i + 1];
    TorsionSpec fs;
    if (!spec.fiber_form.empty()) fs.form = fib.form(spec.fiber_form);
    const Tensor2 ric_f = ricci_coord(fib, y, fs);
    const Mat<double> gf = primal(point_data(fib, y).g);
    const WarpJet w = warp_jet(spec.warp, x[0]);

    Tensor2 r = zero_tensor2(n, Basis::Coordinate);
    r.c[0][0] = -(n - 1) * w.fdd / w.f;
    const double k = spec.eps * (w.fdd / w.f + (n - 2) * w.fd * w.fd / (w.f * w.f));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r.c[i + 1][j + 1] = ric_f.c[i][j] - k * w.f * w.f * gf[i][j];
    return r;
}

SuiteResult check_canonical_V(const WarpedSpec& spec, int samples, std::uint64_t seed,
                              double tol) {
    const Chart warped = make_warped(spec);
    const Chart product = make_warped(product_spec(spec));
    SuiteResult res;
    res.suite = "canonical_v";
    res.chart = warped.id;
    res.vfield = "canonical";
    res.tolerance = tol;
    res.samples = samples;
    res.seed = seed;
    FormFn omega;
    if (!spec.fiber_form.empty()) omega = warped.form("omega");
    FormFn omega_p;
    if (!spec.fiber_form.empty()) omega_p = product.form("omega");

    for (const Point& x : sample_points(warped, samples, seed)) {
        const double f = warp_jet(spec.warp, x[0]).f;
        Tensor2 expect = ricci_coord(product, x, TorsionSpec{{}, omega_p});
        for (int i = 0; i < warped.dim; ++i) {
            expect.c[0][i] /= f;
            expect.c[i][0] /= f;
        }
        const Tensor2 canon = ricci_coord(warped, x, TorsionSpec{warped.vfield("canonical"), omega});
        const Tensor2 pert = ricci_coord(warped, x, TorsionSpec{warped.vfield("perturbed"), omega});
        res.add("canonical", normalized_diff(canon, expect), tol);
        res.add_floor("perturbed_separation", normalized_diff(pert, expect), 1e-4);
    }
    return res;
}

double solve_form_constant(const Chart& fiber, const FormFn& unit_form, const Point& x,
                           double lo, double hi) {
    auto h = [&](double c) {
        TorsionSpec s;
        s.form = [unit_form, c](const Vec<Dual2>& xs) {
            Arr3<Dual2> w = unit_form(xs);
            for (auto& a : w)
                for (auto& b : a)
                    for (auto& v : b) v = c * v;
            return w;
        };
        const PointData pd = point_data(fiber, x);
        return ricci(pd, s).c[0][0];
    };
    double flo = h(lo);
    const double fhi = h(hi);
    if (flo * fhi > 0.0) {
        throw Error(ErrorKind::SolverFailure, "form constant not bracketed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace vtlab
