#include "vtlab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "vtlab/spin.hpp"
#include "vtlab/torus.hpp"
#include "vtlab/warped.hpp"

namespace vtlab {

namespace {

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

SuiteResult make_result(const std::string& suite, const Chart& chart, const std::string& field,
                        int samples, std::uint64_t seed, double tol) {
    SuiteResult r;
    r.suite = suite;
    r.chart = chart.id;
    r.vfield = field;
    r.samples = samples;
    r.seed = seed;
    r.tolerance = tol;
    return r;
}

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); }

Tensor2 outer(const Vec<double>& a, int n) {
    Tensor2 t = zero_tensor2(n, Basis::Frame);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.c[i][j] = a[i] * a[j];
    return t;
}

double vol_density(const PointData& pd) {
    return std::sqrt(std::abs(determinant(primal(pd.g), pd.n)));
}

// Coordinate-basis curvature (4,0) of a connection on the chart.
Tensor4 curvature_coordinates(const PointData& pd, const TorsionSpec& spec) {
    return curvature_coord(connection_coeffs(pd, spec), primal(pd.g));
}

ScalarFn negated(const ScalarFn& f) {
    return [f](const Vec<Dual2>& x) { return -1.0 * f(x); };
}

}  // namespace

Tensor4 schouten(const Tensor2& ric, const Signature& eps, int n) {
    if (n < 3) throw Error(ErrorKind::DimensionTooSmall, "Schouten tensor needs n >= 3");
    const Tensor2 g = frame_metric(n, eps);
    const double s = scalar_contract(ric, eps);
    const Tensor2 p = (1.0 / (n - 2)) * ((s / (2.0 * (n - 1))) * g - ric);
    return kulkarni_nomizu(p, g);
}

SchoutenWeyl schouten_weyl(const PointData& pd, const VectorFn& v) {
    const int n = pd.n;
    if (n < 3) throw Error(ErrorKind::DimensionTooSmall, "Weyl decomposition needs n >= 3");
    const Tensor4 rg = curvature_direct(pd, TorsionSpec::none());
    const Tensor4 rv = curvature_direct(pd, TorsionSpec::vectorial(v));
    SchoutenWeyl out;
    out.schouten_g = schouten(ricci_contract(rg, pd.eps), pd.eps, n);
    out.schouten_v = schouten(ricci_contract(rv, pd.eps), pd.eps, n);
    out.weyl_g = rg - out.schouten_g;
    return out;
}

SchoutenWeyl schouten_weyl(const Chart& chart, const Point& x, const VectorFn& v) {
    return schouten_weyl(point_data(chart, x), v);
}

VectorFn resolve_vfield(const Chart& chart, const std::string& name, std::uint64_t seed) {
    if (name == "random") return random_vfield(chart, seed);
    return chart.vfield(name);
}

SuiteResult check_dual_path(const Chart& chart, const std::string& vname, int samples,
                            std::uint64_t seed, double tol) {
    SuiteResult res = make_result("dual_path", chart, vname, samples, seed, tol);
    const VectorFn v = resolve_vfield(chart, vname, seed);
    std::vector<std::pair<std::string, FormFn>> bases = {{"", {}}};
    for (const auto& [name, w] : chart.forms) bases.emplace_back(name, w);
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        const Mat<double> g = primal(pd.g);
        const Vec<double> vc = primal(eval_vector(pd, v));
        Vec<double> vl{};
        for (int i = 0; i < pd.n; ++i)
            for (int j = 0; j < pd.n; ++j) vl[i] += g[i][j] * vc[j];
        for (const auto& [wname, w] : bases) {
            const TorsionSpec spec{v, w};
            const Tensor4 direct = curvature_direct(pd, spec);
            const Tensor4 lemma = curvature_via_lemma(pd, v, spec.base());
            const std::string tag = wname.empty() ? "" : "+" + wname;
            res.add("dual_path" + tag, normalized_diff(direct, lemma), tol);
            res.add("metricity" + tag, antisymmetry_defect(direct) / (1.0 + max_abs(direct)), tol);

            const RicciData rd = ricci_scalar_div(pd, spec);
            res.add("ricci_lemma" + tag, normalized_diff(rd.ric, rd.ric_lemma), tol);
            res.add("scalar_lemma" + tag, rel(rd.s, rd.s_lemma), tol);

            // antisymmetrized connection difference against T_V + w
            const Arr3<double> t = torsion_lowered(connection_coeffs(pd, spec), g);
            Arr3<double> wv{};
            if (w) wv = primal(eval_form(pd, w));
            double d = 0.0, scale = 1.0;
            for (int i = 0; i < pd.n; ++i)
                for (int j = 0; j < pd.n; ++j)
                    for (int k = 0; k < pd.n; ++k) {
                        const double e = vl[i] * g[j][k] - vl[j] * g[i][k] + wv[i][j][k];
                        d = std::max(d, std::abs(t[i][j][k] - e));
                        scale = std::max(scale, 1.0 + std::abs(e));
                    }
            res.add("torsion_audit" + tag, d / scale, tol);
        }
    }
    return res;
}

SuiteResult check_weyl_decomposition(const Chart& chart, const std::string& vname, int samples,
                                     std::uint64_t seed, double tol) {
    if (chart.dim < 3) throw Error(ErrorKind::DimensionTooSmall, "Weyl decomposition needs n >= 3");
    SuiteResult res = make_result("weyl_decomposition", chart, vname, samples, seed, tol);
    const VectorFn v = resolve_vfield(chart, vname, seed);
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        const SchoutenWeyl sw = schouten_weyl(pd, v);
        const Tensor4 rv = curvature_direct(pd, TorsionSpec::vectorial(v));
        res.add("weyl_decomposition", normalized_diff(rv, sw.weyl_g + sw.schouten_v), tol);
        if (chart.dim == 3) {
            const Tensor4 rg = curvature_direct(pd, TorsionSpec::none());
            res.add("weyl_vanishes_n3", max_abs(sw.weyl_g) / (1.0 + max_abs(rg)), tol);
            res.add("rv_equals_cv_n3", normalized_diff(rv, sw.schouten_v), tol);
        }
    }
    return res;
}

SuiteResult check_bianchi(const Chart& chart, const std::string& vname, int samples,
                          std::uint64_t seed, double tol) {
    SuiteResult res = make_result("bianchi", chart, vname, samples, seed, tol);
    const VectorFn v = resolve_vfield(chart, vname, seed);
    const int n = chart.dim;
    double lhs_max = 0.0;
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        const Tensor4 r = curvature_direct(pd, TorsionSpec::vectorial(v));
        const Form2 dv = dv_flat_frame(pd, v);
        auto g = [&](int a, int b) { return a == b ? double(pd.eps[a]) : 0.0; };
        double d = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const double lhs = r.c[i][j][k][l] + r.c[j][k][i][l] + r.c[k][i][j][l];
                        const double rhs = dv(i, j) * g(k, l) + dv(j, k) * g(i, l) + dv(k, i) * g(j, l);
                        d = std::max(d, std::abs(lhs - rhs));
                        scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
                    }
        lhs_max = std::max(lhs_max, scale);
        res.add("first_bianchi", d / (1.0 + scale), tol);
    }
    res.notes.push_back(fmt("largest cyclic sum %.3e", lhs_max));
    return res;
}

SuiteResult check_symmetry_equivalence(const Chart& chart, const std::string& vname,
                                       int samples, std::uint64_t seed, double tol) {
    SuiteResult res = make_result("symmetry_equiv", chart, vname, samples, seed, tol);
    const VectorFn v = resolve_vfield(chart, vname, seed);
    const int n = chart.dim;
    double dv_max = 0.0, pair_max = 0.0, ric_asym_max = 0.0;
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        const Tensor4 r = curvature_direct(pd, TorsionSpec::vectorial(v));
        const Tensor2 ric = ricci_contract(r, pd.eps);
        const Form2 dv = dv_flat_frame(pd, v);
        double d = 0.0, asym = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const double anti = 0.5 * (ric.c[a][b] - ric.c[b][a]);
                d = std::max(d, std::abs(anti - 0.5 * (n - 2) * dv(a, b)));
                asym = std::max(asym, std::abs(ric.c[a][b] - ric.c[b][a]));
            }
        const double scale = 1.0 + max_abs(ric);
        res.add("ricci_antisym_dv", d / scale, tol);
        dv_max = std::max(dv_max, max_abs(dv));
        pair_max = std::max(pair_max, pair_symmetry_defect(r) / (1.0 + max_abs(r)));
        ric_asym_max = std::max(ric_asym_max, asym / scale);
    }
    if (n == 2) {
        res.add("ricci_symmetric_n2", ric_asym_max, tol);
        res.notes.push_back("n = 2: Ric^V is symmetric for every V");
        return res;
    }
    if (dv_max <= 1e-9) {
        res.add("pair_symmetry_closed", pair_max, tol);
        res.add("ricci_symmetry_closed", ric_asym_max, tol);
        res.notes.push_back("branch: closed");
    } else if (dv_max >= 1e-4) {
        res.add_floor("pair_symmetry_separation", pair_max, 1e-4);
        res.add_floor("ricci_symmetry_separation", ric_asym_max, 1e-4);
        res.notes.push_back(fmt("branch: not closed, max |dV| = %.3e", dv_max));
    } else {
        res.notes.push_back(fmt("max |dV| = %.3e lies between the branch thresholds", dv_max));
    }
    return res;
}

SuiteResult check_dv_flat(const Chart& chart, const std::string& vname, int samples,
                          std::uint64_t seed, double tol) {
    SuiteResult res = make_result("dv_flat", chart, vname, samples, seed, tol);
    const VectorFn v = resolve_vfield(chart, vname, seed);
    const int n = chart.dim;
    for (const Point& x : sample_points(chart, samples, seed)) {
        const DvFlat d = dv_flat(chart, x, v);
        double a = 0.0, b = 0.0, scale = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                a = std::max(a, std::abs(d.levi_civita(i, j) - d.partials(i, j)));
                b = std::max(b, std::abs(d.vectorial(i, j) - d.partials(i, j)));
                scale = std::max(scale, 1.0 + std::abs(d.partials(i, j)));
            }
        res.add("levi_civita_vs_partials", a / scale, tol);
        res.add("vectorial_vs_partials", b / scale, tol);
    }
    return res;
}

SuiteResult check_conformal(const Chart& chart, const std::string& fname, int samples,
                            std::uint64_t seed, double tol) {
    SuiteResult res = make_result("conformal", chart, fname, samples, seed, tol);
    const ScalarFn f = chart.scalar(fname);
    const ScalarFn nf = negated(f);
    const VectorFn v = gradient_field(chart, f, -1.0);
    const Chart ct = conformal_chart(chart, f, fname);
    // back on g~ with -f: V' = -grad~(-f) and e^{-2f} g~ = g
    const VectorFn v2 = gradient_field(ct, nf, -1.0);
    const bool warped_product_check = chart.warp && chart.warp->eps == 1 && fname == "neg_log_warp" &&
                                      chart.warp->fiber_form.empty();
    std::optional<Chart> product;
    if (warped_product_check) product = make_warped(product_spec(*chart.warp));

    for (const Point& x : sample_points(chart, samples, seed)) {
        const double e2f = std::exp(2.0 * primal(f(seed_point(x))));
        const PointData pd = point_data(chart, x);
        const PointData pt = point_data(ct, x);
        const TorsionSpec sv = TorsionSpec::vectorial(v);

        const Tensor4 rv = curvature_coordinates(pd, sv);
        const Tensor4 rt = curvature_coordinates(pt, TorsionSpec::none());
        res.add("curvature", normalized_diff(rv, (1.0 / e2f) * rt), tol);

        const Tensor2 ricv = to_coordinates(ricci(pd, sv), pd);
        const Tensor2 rict = to_coordinates(ricci(pt, TorsionSpec::none()), pt);
        res.add("ricci", normalized_diff(ricv, rict), tol);

        const double sv_ = scalar_contract(ricci(pd, sv), pd.eps);
        const double st = scalar_contract(ricci(pt, TorsionSpec::none()), pt.eps);
        res.add("scalar", rel(sv_, e2f * st), tol);

        const Tensor4 rg = curvature_coordinates(pd, TorsionSpec::none());
        const Tensor4 rback = curvature_coordinates(pt, TorsionSpec::vectorial(v2));
        res.add("round_trip", normalized_diff((1.0 / e2f) * rback, rg), tol);

        if (product) {
            const Tensor2 rp = ricci_coord(*product, x, TorsionSpec::none());
            res.add("product_identification", normalized_diff(rict, rp), tol);
        }
    }
    return res;
}

namespace {

bool hyperbolic_chart(const Chart& c) {
    return c.warp && c.warp->warp_name == "exp" && c.warp->fiber_tag.rfind("flat", 0) == 0 &&
           c.warp->eps == 1;
}

void require_warped(const Chart& c) {
    if (!c.warp) throw Error(ErrorKind::UnsupportedChart, c.id + " is not a warped product");
}

}  // namespace

SuiteResult check_hyperbolic_flat(const Chart& chart, int samples, std::uint64_t seed, double tol) {
    if (!hyperbolic_chart(chart))
        throw Error(ErrorKind::UnsupportedChart, chart.id + " is not R x_{e^t} R^{n-1}");
    SuiteResult res = make_result("hyperbolic_flat", chart, "dt", samples, seed, tol);
    const int n = chart.dim;
    const VectorFn v = chart.vfield("dt");
    const TorsionSpec sv = TorsionSpec::vectorial(v);
    const double strict = std::min(tol, 1e-10);
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        const Mat<double> g = primal(pd.g);
        res.add("rv_zero", max_abs(curvature_direct(pd, sv)), strict);

        Tensor2 hyp = zero_tensor2(n, Basis::Coordinate);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) hyp.c[i][j] = -(n - 1) * g[i][j];
        res.add("ricci_engine", normalized_diff(ricci_coord(chart, x, TorsionSpec::none()), hyp), tol);
        res.add("ricci_closed_form", normalized_diff(ricci_warped_closed_form(*chart.warp, x), hyp), tol);

        // nabla-parallel V: Ric^V = Ric^g + (n-1) g(V,V) g, s^V = s^g + n(n-1) g(V,V)
        const VectorData vd = vector_data(pd, v, connection_coeffs(pd, sv));
        double par = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) par = std::max(par, std::abs(vd.s[a][b]));
        res.add("v_parallel", par, tol);
        const Tensor2 rg = ricci(pd, TorsionSpec::none());
        const Tensor2 rv = ricci(pd, sv);
        res.add("ricci_shift", normalized_diff(rv, rg + ((n - 1) * vd.norm2) * frame_metric(n, pd.eps)), tol);
        res.add("scalar_shift",
                rel(scalar_contract(rv, pd.eps), scalar_contract(rg, pd.eps) + n * (n - 1) * vd.norm2), tol);
        const VectorData vg = vector_data(pd, v, connection_coeffs(pd, TorsionSpec::none()));
        res.add("divergence", rel(vg.div, (n - 1) * vd.norm2), tol);
    }
    return res;
}

SuiteResult check_warped_ricci(const Chart& chart, int samples, std::uint64_t seed, double tol) {
    require_warped(chart);
    SuiteResult res = make_result("warped_ricci", chart, "-", samples, seed, tol);
    TorsionSpec spec;
    if (!chart.warp->fiber_form.empty()) spec.form = chart.form("omega");
    for (const Point& x : sample_points(chart, samples, seed)) {
        res.add("closed_form", normalized_diff(ricci_coord(chart, x, spec),
                                               ricci_warped_closed_form(*chart.warp, x)),
                tol);
    }
    if (spec.form) res.notes.push_back("fiber Ricci includes the fiber 3-form");
    return res;
}

SuiteResult check_umbilic_ricci(const Chart& chart, const std::string& vname, int samples,
                                std::uint64_t seed, double tol) {
    require_warped(chart);
    if (chart.warp->eps != 1 || !chart.riemannian())
        throw Error(ErrorKind::UnsupportedChart, "umbilic formulas need a Riemannian warped chart");
    SuiteResult res = make_result("umbilic_ricci", chart, vname, samples, seed, tol);
    const int n = chart.dim;
    const VectorFn v = chart.vfield(vname);
    int used_norm = 0;
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        const Vec<Dual1> vv = eval_vector(pd, v);
        for (int i = 1; i < n; ++i) {
            if (std::abs(vv[i].v) > 1e-12 || std::abs(vv[0].d[i]) > 1e-12)
                throw Error(ErrorKind::UnsupportedChart, "V is not of the form h(t) d_t");
        }
        const double h = vv[0].v;
        const double hd = vv[0].d[0];
        const WarpJet wj = warp_jet(chart.warp->warp, x[0]);
        const double lam = wj.fd / wj.f;  // d_t is the unit normal, nabla_xi d_t = lam xi
        const Tensor2 dr = ricci(pd, TorsionSpec::vectorial(v)) - ricci(pd, TorsionSpec::none());
        const double scale = 1.0 + max_abs(dr);

        // h d_t with h = h(t): dh(xi) = 0 = h g(N, [xi, N]) for coordinate xi
        double eq5 = 0.0;
        for (int i = 1; i < n; ++i) eq5 = std::max(eq5, std::abs(vv[0].d[i]));
        res.add("eq5", eq5, tol);

        double tang = 0.0, mixed = 0.0;
        const double c_tan = (2 * n - 3) * h * lam + (2 - n) * h * h + hd;
        for (int a = 1; a < n; ++a) {
            for (int b = 1; b < n; ++b) tang = std::max(tang, std::abs(dr.c[a][b] - (a == b ? c_tan : 0.0)));
            mixed = std::max(mixed, std::abs(dr.c[0][a]));  // (n-2) xi(h) = 0
        }
        res.add("umbilic_tangential", tang / scale, tol);
        res.add("umbilic_mixed", mixed / scale, tol);
        res.add("umbilic_normal", std::abs(dr.c[0][0] - (n - 1) * (h * lam + hd)) / scale, tol);

        // |V| and ||V|| read as the same norm; N = V/|V|
        const double nv = std::abs(h);
        if (nv < 1e-6) continue;
        ++used_norm;
        const double sg = h > 0 ? 1.0 : -1.0;
        const double lv = sg * lam;  // second fundamental form w.r.t. V/|V|
        const double H = (n - 1) * lv;
        const double vnorm = nv * hd;  // V(|V|) = h d_t |h|
        double geo1 = 0.0, geo2 = 0.0;
        const double c1 = H * nv + vnorm / nv + (2 - n) * nv * nv + (n - 2) * nv * lv;
        for (int a = 1; a < n; ++a) {
            for (int b = 1; b < n; ++b) geo1 = std::max(geo1, std::abs(dr.c[a][b] - (a == b ? c1 : 0.0)));
            geo2 = std::max(geo2, std::abs(h * dr.c[a][0]));
        }
        res.add("involutive_tangential", geo1 / scale, tol);
        res.add("involutive_mixed", geo2 / scale, tol);
        const double vv_lhs = h * h * dr.c[0][0];
        const double vv_rhs = nv * nv * (H * nv + (n - 1) * vnorm / nv);
        res.add("involutive_normal", std::abs(vv_lhs - vv_rhs) / (scale * (1.0 + h * h)), tol);
    }
    if (used_norm < samples)
        res.notes.push_back("points with |V| < 1e-6 left out of the |V|-normalized formulas");
    return res;
}

SuiteResult check_examples(const Chart& chart, const std::string& vname, int samples,
                           std::uint64_t seed, double tol) {
    const int n = chart.dim;
    const VectorFn v = chart.vfield(vname);
    const TorsionSpec sv = TorsionSpec::vectorial(v);
    struct Sample {
        PointData pd;
        VectorData lc, vc;
    };
    std::vector<Sample> pts;
    bool parallel = true, conformal = true, vparallel = true, nonzero = false;
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        Sample s{pd, vector_data(pd, v, connection_coeffs(pd, TorsionSpec::none())),
                 vector_data(pd, v, connection_coeffs(pd, sv))};
        const double lam = s.lc.s[0][0] * pd.eps[0];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (std::abs(s.lc.s[a][b]) > 1e-10) parallel = false;
                if (std::abs(s.vc.s[a][b]) > 1e-10) vparallel = false;
                const double want = a == b ? lam * pd.eps[a] : 0.0;
                if (std::abs(s.lc.s[a][b] - want) > 1e-10) conformal = false;
            }
        if (std::abs(s.vc.norm2) > 1e-10) nonzero = true;
        pts.push_back(s);
    }
    if (!nonzero) throw Error(ErrorKind::UnsupportedChart, "V vanishes at the sample points");
    if (parallel) conformal = false;  // reported under the parallel class
    if (!parallel && !conformal && !vparallel)
        throw Error(ErrorKind::UnsupportedChart,
                    "V is neither Levi-Civita parallel, closed conformal nor nabla-parallel");

    SuiteResult res = make_result("examples", chart, vname, samples, seed, tol);
    for (const Sample& s : pts) {
        const PointData& pd = s.pd;
        const Tensor2 g = frame_metric(n, pd.eps);
        const Tensor2 rg = ricci(pd, TorsionSpec::none());
        const Tensor2 rv = ricci(pd, sv);
        const double sg = scalar_contract(rg, pd.eps);
        const double svv = scalar_contract(rv, pd.eps);
        const Tensor2 vv = outer(s.lc.lower, n);
        const double q = s.lc.norm2;
        if (parallel) {
            res.add("parallel_ricci", normalized_diff(rv - rg, ((2 - n) * q) * g + (n - 2.0) * vv), tol);
            double crit = 0.0;  // Ric^g = (n-2)|V|^2 g on V-perp, Ric^g(V, .) = 0
            const Tensor2 d = rg - (((n - 2) * q) * g + (2.0 - n) * vv);
            crit = max_abs(d);
            if (crit <= tol) res.add("parallel_ricci_flat", max_abs(rv), tol);
        }
        if (conformal) {
            const double lam = s.lc.s[0][0] * pd.eps[0];
            res.add("conformal_ricci",
                    normalized_diff(rv - rg, (2 * (n - 1) * lam + (2 - n) * q) * g + (n - 2.0) * vv), tol);
            res.add("conformal_scalar",
                    rel(svv - sg, 2.0 * n * (n - 1) * lam - (n - 1.0) * (n - 2) * q), tol);
        }
        if (vparallel) {
            res.add("nabla_parallel_ricci", normalized_diff(rv, rg + ((n - 1) * q) * g), tol);
            res.add("nabla_parallel_scalar", rel(svv, sg + n * (n - 1.0) * q), tol);
            res.add("nabla_parallel_div", rel(s.lc.div, (n - 1) * q), tol);
        }
    }
    std::string cls;
    if (parallel) cls += " parallel";
    if (conformal) cls += " closed_conformal";
    if (vparallel) cls += " nabla_parallel";
    res.notes.push_back("class:" + cls);
    return res;
}

int quadrature_points(int dim) { return dim == 2 ? 64 : (dim == 3 ? 16 : 8); }

namespace {

void require_periodic(const Chart& chart) {
    if (!chart.fully_periodic())
        throw Error(ErrorKind::UnsupportedChart, chart.id + " is not periodic in every coordinate");
}

}  // namespace

double integral_scalar(const Chart& chart, const VectorFn& v, int m, Exec mode) {
    require_periodic(chart);
    const TorsionSpec sv = TorsionSpec::vectorial(v);
    return trapezoid(
        [&](const Point& x) {
            const PointData pd = point_data(chart, x);
            return scalar_contract(ricci(pd, sv), pd.eps) * vol_density(pd);
        },
        chart.dim, chart.period, m, mode);
}

double integral_norm2(const Chart& chart, const VectorFn& v, int m, Exec mode) {
    require_periodic(chart);
    return trapezoid(
        [&](const Point& x) {
            const PointData pd = point_data(chart, x);
            const VectorData vd = vector_data(pd, v, connection_coeffs(pd, TorsionSpec::none()));
            return vd.norm2 * vol_density(pd);
        },
        chart.dim, chart.period, m, mode);
}

double integral_ricci_vv_defect(const Chart& chart, const VectorFn& v, int m, Exec mode) {
    require_periodic(chart);
    const double div = trapezoid(
        [&](const Point& x) {
            const PointData pd = point_data(chart, x);
            return -std::abs(vector_data(pd, v, connection_coeffs(pd, TorsionSpec::none())).div);
        },
        chart.dim, chart.period, m, mode, true);
    // the mean of -|div V| is zero iff div V vanishes on the grid
    if (-div > 1e-10)
        throw Error(ErrorKind::DivergenceNotZero, "div V is not zero (mean |div V| = " +
                                                      fmt("%.3e", -div) + ")");
    const TorsionSpec sv = TorsionSpec::vectorial(v);
    return trapezoid(
        [&](const Point& x) {
            const PointData pd = point_data(chart, x);
            const VectorData vd = vector_data(pd, v, connection_coeffs(pd, TorsionSpec::none()));
            const Tensor2 d = ricci(pd, sv) - ricci(pd, TorsionSpec::none());
            double s = 0.0;
            for (int a = 0; a < pd.n; ++a)
                for (int b = 0; b < pd.n; ++b) s += d.c[a][b] * vd.frame[a] * vd.frame[b];
            return s * vol_density(pd);
        },
        chart.dim, chart.period, m, mode);
}

SuiteResult check_integral_identities(const Chart& chart, const std::string& vname, double tol,
                                      Exec mode) {
    require_periodic(chart);
    const int m = quadrature_points(chart.dim);
    SuiteResult res = make_result("integral_identities", chart, vname, 0, 0, tol);
    int total = 1;
    for (int a = 0; a < chart.dim; ++a) total *= m;
    res.samples = total;
    const VectorFn v = chart.vfield(vname);
    const int n = chart.dim;
    const double sv = integral_scalar(chart, v, m, mode);
    if (n == 2) {
        // total V-scalar curvature equals the Riemannian one, 0 on a torus
        res.add("total_scalar", std::abs(sv), tol);
    } else {
        // divergence integrates to zero: int s^V = int s^g + (n-1)(2-n) int |V|^2
        const double sg = integral_scalar(chart, {}, m, mode);
        const double q = integral_norm2(chart, v, m, mode);
        res.add("total_scalar", std::abs(sv - sg - (n - 1.0) * (2 - n) * q) / (1.0 + std::abs(sv)), tol);
    }
    try {
        res.add("ricci_vv", std::abs(integral_ricci_vv_defect(chart, v, m, mode)), tol);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DivergenceNotZero) throw;
        res.notes.push_back(std::string("ricci_vv not applicable: ") + e.what());
    }
    return res;
}

SuiteResult check_torsion_decomposition(const Chart& chart, int samples, std::uint64_t seed,
                                        double tol) {
    SuiteResult res = make_result("torsion_decomposition", chart, "-", samples, seed, tol);
    const int n = chart.dim;
    // enough random tensors to span the whole space in the rank audit
    const int draws = std::max(samples, n * n * (n - 1) / 2 + 4);
    const TorsionAudit a = audit_torsion_decomposition(n, chart.signature, draws, seed);
    res.add("idempotence", a.idempotence, tol);
    res.add("orthogonality", a.orthogonality, tol);
    res.add("reconstruction", a.reconstruction, tol);
    const int dv = n, ds = n * (n - 1) * (n - 2) / 6, dr = a.total - dv - ds;
    const double miss = std::abs(a.rank_vectorial - dv) + std::abs(a.rank_skew - ds) +
                        std::abs(a.rank_rest - dr) +
                        std::abs(a.rank_vectorial + a.rank_skew + a.rank_rest - a.total);
    res.add("dimension_audit", miss, 0.0);
    res.notes.push_back("ranks " + std::to_string(a.rank_vectorial) + " + " +
                        std::to_string(a.rank_skew) + " + " + std::to_string(a.rank_rest) +
                        " of " + std::to_string(a.total));
    return res;
}

SuiteResult check_killing(const Chart& chart, const std::string& vname, int samples,
                          std::uint64_t seed) {
    const double beta = 0.5;
    const KillingObstruction k = check_killing_obstruction(chart, chart.vfield(vname), beta, samples, seed);
    SuiteResult res = make_result("killing_obstruction", chart, vname, samples, seed, 1e-12);
    res.add("clifford_skew", k.skew_part, 1e-12);
    res.add("clifford_trace", k.trace_defect, 1e-12);
    res.add("real_part", k.real_part_defect, 1e-12);
    const double want = beta * (chart.dim - 1);
    res.add("witness", std::abs(k.witness - want), 1e-12);
    res.notes.push_back(fmt("real part of the integrability condition at V = X = e_1: %.6f", k.witness));
    return res;
}

// Runner.

namespace {

enum class Fields { None, VFields, VFieldsRandom, Scalars, Spinors, Potentials };

struct SuiteDef {
    std::string name;
    double tol;
    Fields fields;
    std::function<bool(const Chart&)> applies;
    std::function<SuiteResult(const Chart&, const std::string&, const RunOptions&, double, Exec)> run;
};

bool any(const Chart&) { return true; }
bool flat_torus(const Chart& c) { return c.id.rfind("flat_torus_", 0) == 0; }

const std::vector<SuiteDef>& suites() {
    static const std::vector<SuiteDef> all = {
        {"dual_path", 1e-9, Fields::VFieldsRandom, any,
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_dual_path(c, f, o.samples, o.seed, t);
         }},
        {"weyl_decomposition", 1e-9, Fields::VFieldsRandom, [](const Chart& c) { return c.dim >= 3; },
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_weyl_decomposition(c, f, o.samples, o.seed, t);
         }},
        {"bianchi", 1e-9, Fields::VFields, any,
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_bianchi(c, f, o.samples, o.seed, t);
         }},
        {"symmetry_equiv", 1e-9, Fields::VFields, any,
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_symmetry_equivalence(c, f, o.samples, o.seed, t);
         }},
        {"dv_flat", 1e-10, Fields::VFields, any,
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_dv_flat(c, f, o.samples, o.seed, t);
         }},
        {"conformal", 1e-9, Fields::Scalars, [](const Chart& c) { return !c.scalars.empty(); },
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_conformal(c, f, o.samples, o.seed, t);
         }},
        {"hyperbolic_flat", 1e-9, Fields::None, hyperbolic_chart,
         [](const Chart& c, const std::string&, const RunOptions& o, double t, Exec) {
             return check_hyperbolic_flat(c, o.samples, o.seed, t);
         }},
        {"warped_ricci", 1e-9, Fields::None, [](const Chart& c) { return c.warp.has_value(); },
         [](const Chart& c, const std::string&, const RunOptions& o, double t, Exec) {
             return check_warped_ricci(c, o.samples, o.seed, t);
         }},
        {"canonical_v", 1e-9, Fields::None, [](const Chart& c) { return c.warp.has_value(); },
         [](const Chart& c, const std::string&, const RunOptions& o, double t, Exec) {
             require_warped(c);
             return check_canonical_V(*c.warp, o.samples, o.seed, t);
         }},
        {"umbilic_ricci", 1e-9, Fields::VFields,
         [](const Chart& c) { return c.warp && c.warp->eps == 1; },
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_umbilic_ricci(c, f, o.samples, o.seed, t);
         }},
        {"examples", 1e-9, Fields::VFields, any,
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_examples(c, f, o.samples, o.seed, t);
         }},
        {"integral_identities", 1e-8, Fields::VFields, [](const Chart& c) { return c.fully_periodic(); },
         [](const Chart& c, const std::string& f, const RunOptions&, double t, Exec) {
             return check_integral_identities(c, f, t);
         }},
        {"torsion_decomposition", 1e-12, Fields::None, any,
         [](const Chart& c, const std::string&, const RunOptions& o, double t, Exec) {
             return check_torsion_decomposition(c, o.samples, o.seed, t);
         }},
        {"ric_spinor", 1e-9, Fields::VFieldsRandom, [](const Chart& c) { return c.riemannian(); },
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_ric_spinor_identity(c, f, resolve_vfield(c, f, o.seed), o.samples, o.seed, t);
         }},
        {"killing_obstruction", 1e-12, Fields::VFields, [](const Chart& c) { return c.riemannian(); },
         [](const Chart& c, const std::string& f, const RunOptions& o, double, Exec) {
             return check_killing(c, f, o.samples, o.seed);
         }},
        {"parallel_spinor", 1e-9, Fields::Spinors, [](const Chart& c) { return !c.spinors.empty(); },
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             return check_parallel_spinor_consequences(c, f, o.samples, o.seed, t);
         }},
        {"lichnerowicz", 1e-6, Fields::VFields, flat_torus,
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             if (!flat_torus(c)) throw Error(ErrorKind::UnsupportedChart, "flat torus charts only");
             const int K = c.dim == 2 ? o.K : (c.dim == 3 ? 5 : 3);
             SuiteResult r = check_lichnerowicz(c.dim, vector_poly(c.vfield(f), c.dim), f, 1.0, K, 3,
                                                o.seed, t);
             r.chart = c.id;
             return r;
         }},
        {"isospectral", 1e-6, Fields::Potentials, [](const Chart& c) { return c.id == "flat_torus_2"; },
         [](const Chart& c, const std::string& f, const RunOptions& o, double t, Exec) {
             if (c.id != "flat_torus_2") throw Error(ErrorKind::UnsupportedChart, "flat_torus_2 only");
             SuiteResult r = make_result("isospectral", c, f, o.m, o.seed, t);
             const TrigPoly p = trig_poly(find_potential(f).f, 2);
             for (const SpinStructure& s : all_spin_structures()) {
                 const IsospectralResult ir = compare_isospectral(s, p, f, o.K, o.m);
                 r.add("spin_" + std::to_string(s.e1) + std::to_string(s.e2), ir.max_distance, t);
             }
             return r;
         }},
        {"parallel_grid", 1e-10, Fields::None, [](const Chart& c) { return c.id == "flat_torus_2"; },
         [](const Chart& c, const std::string&, const RunOptions& o, double t, Exec mode) {
             if (c.id != "flat_torus_2") throw Error(ErrorKind::UnsupportedChart, "flat_torus_2 only");
             SuiteResult r = make_result("parallel_grid", c, "constant", 100, o.seed, t);
             int oracle_pointwise = 0, oracle_kernel = 0, displayed = 0;
             for (const ParallelDetection& d : parallel_grid(5, mode)) {
                 oracle_pointwise += d.oracle_dim != d.pointwise_dim;
                 oracle_kernel += d.oracle_dim != d.kernel_dim;
                 displayed += !d.displayed_agree;
                 r.add("parallel_residual", d.parallel_residual, t);
             }
             r.add("oracle_vs_pointwise_mismatches", oracle_pointwise, 0.0);
             r.add("oracle_vs_kernel_mismatches", oracle_kernel, 0.0);
             r.notes.push_back("cells where the displayed torus condition disagrees with the oracle: " +
                               std::to_string(displayed) + " of 100 (flagged, not corrected)");
             return r;
         }},
    };
    return all;
}

const SuiteDef& find_suite(const std::string& name) {
    for (const auto& s : suites())
        if (s.name == name) return s;
    throw Error(ErrorKind::Config, "unknown suite '" + name + "'");
}

bool precondition(ErrorKind k) {
    switch (k) {
        case ErrorKind::UnsupportedChart:
        case ErrorKind::DimensionTooSmall:
        case ErrorKind::UnsupportedDimension:
        case ErrorKind::DivergenceNotZero:
        case ErrorKind::NotClosed:
        case ErrorKind::NotParallel:
        case ErrorKind::CutoffTooSmall:
        case ErrorKind::UnknownId:
            return true;
        default:
            return false;
    }
}

std::vector<std::string> field_names(const Chart& c, Fields f) {
    std::vector<std::string> out;
    switch (f) {
        case Fields::None:
            out.push_back("-");
            break;
        case Fields::VFieldsRandom:
            for (const auto& [k, _] : c.vfields) out.push_back(k);
            out.push_back("random");
            break;
        case Fields::VFields:
            for (const auto& [k, _] : c.vfields) out.push_back(k);
            break;
        case Fields::Scalars:
            for (const auto& [k, _] : c.scalars) out.push_back(k);
            break;
        case Fields::Spinors:
            for (const auto& [k, _] : c.spinors) out.push_back(k);
            break;
        case Fields::Potentials:
            for (const auto& p : torus_potentials()) out.push_back(p.name);
            break;
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
}

bool is_suite(const std::string& name) {
    for (const auto& s : suites())
        if (s.name == name) return true;
    return false;
}

std::vector<SuiteResult> run_suite(const std::string& suite, const std::vector<ChartPtr>& charts,
                                   bool explicit_charts, const std::optional<std::string>& vname,
                                   const RunOptions& opt, Exec mode) {
    const SuiteDef& def = find_suite(suite);
    const double tol = opt.tol.value_or(def.tol);
    struct Job {
        ChartPtr chart;
        std::string field;
    };
    std::vector<Job> jobs;
    for (const ChartPtr& c : charts) {
        if (!explicit_charts && !def.applies(*c)) continue;
        if (vname && def.fields != Fields::None) {
            jobs.push_back({c, *vname});
            continue;
        }
        for (const std::string& f : field_names(*c, def.fields)) jobs.push_back({c, f});
        if (explicit_charts && def.fields != Fields::None && field_names(*c, def.fields).empty())
            jobs.push_back({c, "-"});
    }
    // the grid suite parallelizes internally
    const Exec inner = def.name == "parallel_grid" ? mode : Exec::Serial;
    return map_indices<SuiteResult>(
        static_cast<int>(jobs.size()),
        [&](int i) {
            const Job& j = jobs[i];
            try {
                SuiteResult r = def.run(*j.chart, j.field, opt, tol, inner);
                r.suite = def.name;
                return r;
            } catch (const Error& e) {
                SuiteResult r = make_result(def.name, *j.chart, j.field, opt.samples, opt.seed, tol);
                if (precondition(e.kind())) {
                    r.skip(e.what());
                } else {
                    r.add("error", INFINITY, tol);
                    r.notes.push_back(e.what());
                }
                return r;
            }
        },
        jobs.size() > 1 ? mode : Exec::Serial);
}

}  // namespace vtlab
