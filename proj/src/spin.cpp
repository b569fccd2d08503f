#include "vtlab/spin.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

namespace vtlab {

namespace {

double spinor_diff(const Spinor<double>& a, const Spinor<double>& b) {
    return max_abs(a - b) / (1.0 + std::max(max_abs(a), max_abs(b)));
}

double cvec_diff(const CVec& a, const CVec& b) {
    const double s = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / (1.0 + s);
}

void require_riemannian(const Chart& chart) {
    if (!chart.riemannian()) {
        throw Error(ErrorKind::UnsupportedChart, "spinors need a Riemannian chart, got " + chart.id);
    }
}

VectorFn scaled(const VectorFn& v, double t) {
    if (!v) return {};
    return [v, t](const Vec<Dual2>& xs) {
        Vec<Dual2> r = v(xs);
        for (auto& c : r) c = t * c;
        return r;
    };
}

Spinor<Dual1> eval_spinor(const SpinorFn& fn, const Point& x) {
    return value_part(fn(seed_point(x)));
}

}  // namespace

SpinFrame<Dual1> spin_frame(const Chart& chart, const Point& x, const VectorFn& v) {
    require_riemannian(chart);
    const PointData pd = point_data(chart, x);
    const int n = pd.n;
    const Mat<Dual2> g2 = metric_dual(chart, pd.xs);
    Signature eps{1, 1, 1, 1};
    // second-order frame, so that omega carries its own first derivatives
    const Mat<Dual2> e2 = gram_schmidt(g2, n, eps, metric_scale(primal(pd.g), n));

    SpinFrame<Dual1> sf;
    sf.n = n;
    sf.e = value_part(e2);
    sf.theta = zero_mat<Dual1>();
    sf.omega = zero_arr3<Dual1>();
    sf.v.fill(Dual1(0.0));
    sf.gv.fill(Dual1(0.0));
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) {
            Dual1 s(0.0);
            for (int j = 0; j < n; ++j) s += pd.g[i][j] * sf.e[a][j];
            sf.theta[a][i] = s;
        }
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
            // nabla_i e_a in coordinates
            Vec<Dual1> de;
            for (int k = 0; k < n; ++k) {
                Dual1 s = e2[a][k].d[i];
                for (int j = 0; j < n; ++j) s += pd.gamma[k][i][j] * sf.e[a][j];
                de[k] = s;
            }
            for (int b = 0; b < n; ++b) {
                Dual1 s(0.0);
                for (int k = 0; k < n; ++k) s += de[k] * sf.theta[b][k];
                sf.omega[i][a][b] = s;
            }
        }
    if (v) {
        const Vec<Dual1> vc = eval_vector(pd, v);
        for (int a = 0; a < n; ++a) {
            Dual1 s(0.0);
            for (int i = 0; i < n; ++i) s += sf.theta[a][i] * vc[i];
            sf.v[a] = s;
        }
        for (int i = 0; i < n; ++i) {
            Dual1 s(0.0);
            for (int j = 0; j < n; ++j) s += pd.g[i][j] * vc[j];
            sf.gv[i] = s;
        }
    }
    return sf;
}

SpinFrame<double> value_part(const SpinFrame<Dual1>& sf) {
    SpinFrame<double> r;
    r.n = sf.n;
    r.e = value_part(sf.e);
    r.theta = value_part(sf.theta);
    r.omega = value_part(sf.omega);
    r.v = value_part(sf.v);
    r.gv = value_part(sf.gv);
    return r;
}

SpinorFn random_spinor_field(const Chart& chart, int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> freq(-1.2, 1.2);
    std::uniform_int_distribution<int> ifreq(-2, 2);
    struct Term {
        double re = 0.0, im = 0.0, phi = 0.0;
        Vec<double> w{};
    };
    const int n = chart.dim;
    std::array<std::array<Term, 3>, kMaxSpinor> terms{};
    std::array<Cplx<double>, kMaxSpinor> c0{};
    for (int c = 0; c < N; ++c) {
        c0[c] = {amp(rng), amp(rng)};
        for (auto& tm : terms[c]) {
            tm.re = amp(rng);
            tm.im = amp(rng);
            tm.phi = phase(rng);
            for (int j = 0; j < n; ++j)
                tm.w[j] = chart.period[j] > 0.0
                              ? 2.0 * 3.14159265358979323846 * ifreq(rng) / chart.period[j]
                              : freq(rng);
        }
    }
    return [terms, c0, n, N](const Vec<Dual2>& xs) {
        Spinor<Dual2> s = zero_spinor<Dual2>();
        for (int c = 0; c < N; ++c) {
            Dual2 re(c0[c].re), im(c0[c].im);
            for (const auto& tm : terms[c]) {
                Dual2 arg(tm.phi);
                for (int j = 0; j < n; ++j) arg = arg + tm.w[j] * xs[j];
                re = re + tm.re * sin(arg);
                im = im + tm.im * cos(arg);
            }
            s[c] = {re, im};
        }
        return s;
    };
}

Spinor<double> random_spinor(int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    Spinor<double> s = zero_spinor<double>();
    for (int c = 0; c < N; ++c) s[c] = {amp(rng), amp(rng)};
    return s;
}

double ric_spinor_residual(const Chart& chart, const Point& x, const VectorFn& v,
                           const Spinor<double>& psi, double dv_coef) {
    require_riemannian(chart);
    const PointData pd = point_data(chart, x);
    const int n = pd.n;
    const CliffordRep cl = build_clifford(n);
    const TorsionSpec spec = TorsionSpec::vectorial(v);
    const Tensor4 r = curvature_direct(pd, spec);
    const Tensor2 ric = ricci(pd, spec);
    const Mat<double> dv = v ? dv_flat_frame(pd, v).matrix() : zero_mat<double>();
    const CVec p = to_cvec(psi, cl.N);

    double res = 0.0;
    for (int a = 0; a < n; ++a) {
        CVec lhs = CVec::Zero(cl.N);
        for (int b = 0; b < n; ++b) lhs += ric.c[a][b] * (cl.gamma[b] * p);
        CVec rhs = CVec::Zero(cl.N);
        for (int k = 0; k < n; ++k) rhs -= 2.0 * (cl.gamma[k] * (cl.lift(r.c[a][k]) * p));
        if (dv_coef != 0.0 && n >= 3) {
            // (dV ^ e_a)_pqr = dV_pq d_ra - dV_pr d_qa + dV_qr d_pa
            Form3 w;
            w.n = n;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (int k = j + 1; k < n; ++k) {
                        const double val = dv[i][j] * (k == a) - dv[i][k] * (j == a) +
                                           dv[j][k] * (i == a);
                        w.set(i, j, k, val);
                    }
            rhs += dv_coef * (cl.three_form(w) * p);
        }
        res = std::max(res, cvec_diff(lhs, rhs));
    }
    return res;
}

SuiteResult check_ric_spinor_identity(const Chart& chart, const std::string& vname,
                                      const VectorFn& v, int samples, std::uint64_t seed,
                                      double tol) {
    SuiteResult res;
    res.suite = "ric_spinor";
    res.chart = chart.id;
    res.vfield = vname;
    res.tolerance = tol;
    res.samples = samples;
    res.seed = seed;
    const int N = build_clifford(chart.dim).N;
    double ablation = 0.0;
    double flipped = 0.0;
    double dv_max = 0.0;
    int s = 0;
    for (const Point& x : sample_points(chart, samples, seed)) {
        const Spinor<double> psi = random_spinor(N, seed + 7919u * ++s);
        res.add("ric_spinor", ric_spinor_residual(chart, x, v, psi), tol);
        if (v) {
            dv_max = std::max(dv_max, max_abs(dv_flat_frame(point_data(chart, x), v)));
            ablation = std::max(ablation, ric_spinor_residual(chart, x, v, psi, 0.0));
            flipped = std::max(flipped, ric_spinor_residual(chart, x, v, psi, -kDvSign));
        }
    }
    if (dv_max > 1e-4 && chart.dim >= 3) {
        res.add_floor("dv_term_ablation", ablation, 1e-3);
        char buf[128];
        std::snprintf(buf, sizeof buf, "residual with the dV term sign flipped: %.3e", flipped);
        res.notes.push_back(buf);
    }
    return res;
}

KillingObstruction check_killing_obstruction(const Chart& chart, const VectorFn& v, double beta,
                                             int samples, std::uint64_t seed) {
    require_riemannian(chart);
    const int n = chart.dim;
    const CliffordRep cl = build_clifford(n);
    KillingObstruction out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int s = 0;
    for (const Point& x : sample_points(chart, samples, seed)) {
        const PointData pd = point_data(chart, x);
        if (v && max_abs(dv_flat_frame(pd, v)) > 1e-9) {
            throw Error(ErrorKind::NotClosed, "dV is not zero on " + chart.id);
        }
        Vec<double> vf{};
        if (v) {
            const Vec<double> vc = primal(eval_vector(pd, v));
            const Mat<double> g = primal(pd.g);
            for (int a = 0; a < n; ++a)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) vf[a] += g[i][j] * pd.ev[a][i] * vc[j];
        }
        Vec<double> xf{};
        for (int a = 0; a < n; ++a) xf[a] = u(rng);
        double gxv = 0.0;
        for (int a = 0; a < n; ++a) gxv += xf[a] * vf[a];
        const CVec p = to_cvec(random_spinor(cl.N, seed + 104729u * ++s), cl.N);
        const double norm2 = p.squaredNorm();
        const CMat xm = cl.vector(xf);
        const CMat vm = cl.vector(vf);
        const double sk = hermitian(xm * p, p).real();
        const double vx = hermitian(vm * (xm * p), p).real();
        out.skew_part = std::max(out.skew_part, std::abs(sk));
        out.trace_defect = std::max(out.trace_defect, std::abs(vx + gxv * norm2));
        const double re = beta * n * gxv * norm2 + beta * vx;
        out.real_part_defect =
            std::max(out.real_part_defect, std::abs(re - beta * (n - 1) * gxv * norm2));
    }
    CVec p = to_cvec(random_spinor(cl.N, seed), cl.N);
    p.normalize();
    out.witness = beta * n + beta * hermitian(cl.gamma[0] * (cl.gamma[0] * p), p).real();
    return out;
}

SuiteResult check_parallel_spinor_consequences(const Chart& chart, const std::string& spinor,
                                               int samples, std::uint64_t seed, double tol) {
    require_riemannian(chart);
    const auto it = chart.spinors.find(spinor);
    if (it == chart.spinors.end()) {
        throw Error(ErrorKind::UnknownId, "spinor '" + spinor + "' not defined on " + chart.id);
    }
    const SpinorField& field = it->second;
    const VectorFn v = field.vfield.empty() ? VectorFn{} : chart.vfield(field.vfield);
    const int n = chart.dim;
    const CliffordRep cl = build_clifford(n);
    const std::vector<Point> pts = sample_points(chart, samples, seed);

    for (const Point& x : pts) {
        const SpinFrame<double> sf = value_part(spin_frame(chart, x, v));
        const Spinor<Dual1> psi = eval_spinor(field.fn, x);
        for (int i = 0; i < n; ++i) {
            const double d = max_abs(cov_deriv(sf, cl, psi, i, 1.0));
            if (!(d <= 1e-9)) {
                throw Error(ErrorKind::NotParallel, "spinor '" + spinor + "' on " + chart.id +
                                                        " has |nabla psi| = " + std::to_string(d));
            }
        }
    }

    SuiteResult res;
    res.suite = "parallel_spinor";
    res.chart = chart.id;
    res.vfield = field.vfield.empty() ? "zero" : field.vfield;
    res.tolerance = tol;
    res.samples = samples;
    res.seed = seed;
    double nmin = INFINITY, nmax = 0.0;
    for (const Point& x : pts) {
        const PointData pd = point_data(chart, x);
        const RicciData rv = ricci_scalar_div(pd, TorsionSpec::vectorial(v));
        const RicciData rg = ricci_scalar_div(pd, TorsionSpec::none());
        res.add("scalar_v", std::abs(rv.s), tol);
        const Mat<double> dv = v ? dv_flat_frame(pd, v).matrix() : zero_mat<double>();
        if (n == 4) {
            double d = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) d = std::max(d, std::abs(rv.ric.c[a][b] - dv[a][b]));
            res.add("ricci_v_contraction", d, tol);
        } else {
            res.add("ricci_v", max_abs(rv.ric), tol);
            double d = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) d = std::max(d, std::abs(dv[a][b]));
            res.add("dv_closed", d, tol);
        }

        const SpinFrame<Dual1> sf1 = spin_frame(chart, x, v);
        const SpinFrame<double> sf = value_part(sf1);
        const Spinor<Dual2> psi2 = field.fn(seed_point(x));
        const Spinor<Dual1> psi1 = value_part(psi2);
        const Spinor<double> psi = value_part(psi1);

        Dual1 norm2(0.0);
        for (int c = 0; c < cl.N; ++c) norm2 += psi1[c].re * psi1[c].re + psi1[c].im * psi1[c].im;
        double grad = 0.0;
        for (int i = 0; i < n; ++i) grad = std::max(grad, std::abs(norm2.d[i]));
        res.add("norm_gradient", grad, 1e-10);
        nmin = std::min(nmin, std::sqrt(norm2.v));
        nmax = std::max(nmax, std::sqrt(norm2.v));

        res.add("dirac_v", max_abs(dirac(sf, cl, psi1, 1.0)), tol);

        const Spinor<Dual1> dpsi = dirac(sf1, cl, psi2, 0.0);
        const Spinor<double> ddpsi = dirac(sf, cl, dpsi, 0.0);
        double v2 = 0.0;
        for (int a = 0; a < n; ++a) v2 += sf.v[a] * sf.v[a];
        const Spinor<double> expect = scale(0.25 * (rg.s + (n - 1) * v2), psi);
        res.add("dirac_square", spinor_diff(ddpsi, expect), 1e-8);
    }
    res.add("norm_constant", nmax - nmin, 1e-10);
    return res;
}

double spinor_curvature_residual(const Chart& chart, const Point& x, const VectorFn& v, double t,
                                 std::uint64_t seed) {
    const SpinFrame<Dual1> sf1 = spin_frame(chart, x, v);
    const SpinFrame<double> sf = value_part(sf1);
    const int n = sf.n;
    const CliffordRep cl = build_clifford(n);
    const Spinor<Dual2> psi2 = random_spinor_field(chart, cl.N, seed)(seed_point(x));
    const Spinor<double> psi = value_part(value_part(psi2));
    const PointData pd = point_data(chart, x);
    const Tensor4 r = curvature_direct(pd, TorsionSpec::vectorial(scaled(v, t)));
    double res = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Spinor<Dual1> di = cov_deriv(sf1, cl, psi2, i, t);
            const Spinor<Dual1> dj = cov_deriv(sf1, cl, psi2, j, t);
            const Spinor<double> lhs = cov_deriv(sf, cl, dj, i, t) - cov_deriv(sf, cl, di, j, t);
            Mat<double> rij = zero_mat<double>();
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double s = 0.0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            s += sf.theta[a][i] * sf.theta[b][j] * r.c[a][b][c][d];
                    rij[c][d] = s;
                }
            const Spinor<double> rhs = act(cl.lift(rij), psi);
            res = std::max(res, spinor_diff(lhs, rhs));
        }
    return res;
}

double metric_compatibility_residual(const Chart& chart, const Point& x, const VectorFn& v,
                                     std::uint64_t seed) {
    const SpinFrame<double> sf = value_part(spin_frame(chart, x, v));
    const int n = sf.n;
    const CliffordRep cl = build_clifford(n);
    const Spinor<Dual1> psi = eval_spinor(random_spinor_field(chart, cl.N, seed), x);
    const Spinor<Dual1> phi = eval_spinor(random_spinor_field(chart, cl.N, seed + 1), x);
    // (psi, phi) = sum conj(phi) psi
    auto herm = [&](const auto& a, const auto& b) {
        using T = std::decay_t<decltype(a[0].re)>;
        T re(0.0), im(0.0);
        for (int c = 0; c < cl.N; ++c) {
            re = re + b[c].re * a[c].re + b[c].im * a[c].im;
            im = im + b[c].re * a[c].im - b[c].im * a[c].re;
        }
        return std::pair<T, T>{re, im};
    };
    const auto h = herm(psi, phi);
    const Spinor<double> p0 = value_part(psi), f0 = value_part(phi);
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto a = herm(cov_deriv(sf, cl, psi, i, 1.0), f0);
        const auto b = herm(p0, cov_deriv(sf, cl, phi, i, 1.0));
        const double dre = h.first.d[i] - (a.first + b.first);
        const double dim = h.second.d[i] - (a.second + b.second);
        res = std::max(res, std::max(std::abs(dre), std::abs(dim)) /
                                (1.0 + std::abs(h.first.d[i]) + std::abs(h.second.d[i])));
    }
    return res;
}

double conformal_dirac_residual(const Chart& chart, const std::string& fname, const Point& x,
                                std::uint64_t seed) {
    require_riemannian(chart);
    const ScalarFn& f = chart.scalar(fname);
    const Chart conf = conformal_chart(chart, f, fname);
    const VectorFn v = gradient_field(chart, f, -1.0);
    const CliffordRep cl = build_clifford(chart.dim);
    const Spinor<Dual1> psi = eval_spinor(random_spinor_field(chart, cl.N, seed), x);
    const SpinFrame<double> sft = value_part(spin_frame(conf, x, {}));
    const SpinFrame<double> sf = value_part(spin_frame(chart, x, v));
    const Spinor<double> lhs = dirac(sft, cl, psi, 0.0);
    const double w = std::exp(-primal(f(seed_point(x))));
    const Spinor<double> rhs = scale(w, dirac(sf, cl, psi, 1.0));
    return spinor_diff(lhs, rhs);
}

}  // namespace vtlab
