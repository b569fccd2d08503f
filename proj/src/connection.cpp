#include "vtlab/connection.hpp"

namespace vtlab {

PointData point_data(const Chart& chart, const Point& x) {
    PointData pd;
    pd.n = chart.dim;
    pd.x = x;
    pd.xs = seed_point(x);
    const int n = pd.n;
    const Mat<Dual2> g2 = metric_dual(chart, pd.xs);
    pd.g = value_part(g2);
    pd.ginv = inverse(pd.g, n);
    for (int k = 0; k < kMaxDim; ++k)
        for (int i = 0; i < kMaxDim; ++i)
            for (int j = 0; j < kMaxDim; ++j) pd.gamma[k][i][j] = Dual1(0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Dual1 s(0.0);
                for (int l = 0; l < n; ++l) {
                    s += pd.ginv[k][l] * (g2[j][l].d[i] + g2[i][l].d[j] - g2[i][j].d[l]);
                }
                pd.gamma[k][i][j] = 0.5 * s;
                pd.gamma[k][j][i] = pd.gamma[k][i][j];
            }
    const Mat<double> gv = primal(pd.g);
    pd.e = gram_schmidt(pd.g, n, pd.eps, metric_scale(gv, n));
    for (int a = 0; a < n; ++a) {
        if (pd.eps[a] != chart.signature[a]) {
            throw Error(ErrorKind::FrameConstructionFailed,
                        "frame signature does not match chart order on " + chart.id);
        }
    }
    pd.ev = primal(pd.e);
    return pd;
}

Vec<Dual1> eval_vector(const PointData& pd, const VectorFn& v) {
    Vec<Dual1> r = value_part(v(pd.xs));
    for (int i = pd.n; i < kMaxDim; ++i) r[i] = Dual1(0.0);
    return r;
}

Arr3<Dual1> eval_form(const PointData& pd, const FormFn& w) { return value_part(w(pd.xs)); }

ConnCoeffs christoffel(const Chart& chart, const Point& x) {
    const PointData pd = point_data(chart, x);
    return {pd.n, pd.gamma};
}

ConnCoeffs connection_coeffs(const PointData& pd, const TorsionSpec& spec) {
    ConnCoeffs cc{pd.n, pd.gamma};
    const int n = pd.n;
    if (spec.vfield) {
        const Arr3<Dual1> a = vectorial_A(pd.g, eval_vector(pd, spec.vfield), n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) cc.c[k][i][j] += a[k][i][j];
    }
    if (spec.form) {
        const Arr3<Dual1> a = skew_A(pd.ginv, eval_form(pd, spec.form), n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) cc.c[k][i][j] += a[k][i][j];
    }
    return cc;
}

Arr3<double> torsion_lowered(const ConnCoeffs& cc, const Mat<double>& g) {
    Arr3<double> t = zero_arr3<double>();
    const int n = cc.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int m = 0; m < n; ++m) s += g[k][m] * (cc.c[m][i][j].v - cc.c[m][j][i].v);
                t[i][j][k] = s;
            }
    return t;
}

Tensor4 curvature_coord(const ConnCoeffs& cc, const Mat<double>& g) {
    const int n = cc.n;
    // r3[l][i][j][k] = R^l_ijk
    Arr4<double> r3{};
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double s = cc.c[l][j][k].d[i] - cc.c[l][i][k].d[j];
                    for (int m = 0; m < n; ++m) {
                        s += cc.c[m][j][k].v * cc.c[l][i][m].v - cc.c[m][i][k].v * cc.c[l][j][m].v;
                    }
                    r3[l][i][j][k] = s;
                }
    Tensor4 r = zero_tensor4(n, Basis::Coordinate);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < n; ++m) s += g[l][m] * r3[m][i][j][k];
                    r.c[i][j][k][l] = s;
                }
    return r;
}

Tensor4 to_frame(const Tensor4& r, const Mat<double>& e) {
    const int n = r.n;
    Arr4<double> a = r.c;
    Arr4<double> b{};
    // contract one slot at a time
    for (int slot = 0; slot < 4; ++slot) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double s = 0.0;
                        for (int m = 0; m < n; ++m) {
                            switch (slot) {
                                case 0: s += e[i][m] * a[m][j][k][l]; break;
                                case 1: s += e[j][m] * a[i][m][k][l]; break;
                                case 2: s += e[k][m] * a[i][j][m][l]; break;
                                default: s += e[l][m] * a[i][j][k][m]; break;
                            }
                        }
                        b[i][j][k][l] = s;
                    }
        a = b;
    }
    Tensor4 out = zero_tensor4(n, Basis::Frame);
    out.c = a;
    return out;
}

Tensor2 to_frame(const Tensor2& t, const Mat<double>& e) {
    Tensor2 out = zero_tensor2(t.n, Basis::Frame);
    for (int a = 0; a < t.n; ++a)
        for (int b = 0; b < t.n; ++b) {
            double s = 0.0;
            for (int i = 0; i < t.n; ++i)
                for (int j = 0; j < t.n; ++j) s += e[a][i] * e[b][j] * t.c[i][j];
            out.c[a][b] = s;
        }
    return out;
}

Arr3<double> to_frame(const Arr3<double>& t, const Mat<double>& e, int n) {
    Arr3<double> out = zero_arr3<double>();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double s = 0.0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        for (int k = 0; k < n; ++k) s += e[a][i] * e[b][j] * e[c][k] * t[i][j][k];
                out[a][b][c] = s;
            }
    return out;
}

Tensor4 curvature_direct(const PointData& pd, const TorsionSpec& spec) {
    const ConnCoeffs cc = connection_coeffs(pd, spec);
    return to_frame(curvature_coord(cc, primal(pd.g)), pd.ev);
}

Tensor4 curvature_direct(const Chart& chart, const Point& x, const TorsionSpec& spec) {
    return curvature_direct(point_data(chart, x), spec);
}

VectorData vector_data(const PointData& pd, const VectorFn& v, const ConnCoeffs& cc) {
    VectorData vd;
    const int n = pd.n;
    if (!v) return vd;
    const Vec<Dual1> vv = eval_vector(pd, v);
    const Mat<double> g = primal(pd.g);
    Mat<double> nab{};  // nab[i][k] = (nabla_i V)^k
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double s = vv[k].d[i];
            for (int j = 0; j < n; ++j) s += cc.c[k][i][j].v * vv[j].v;
            nab[i][k] = s;
        }
    for (int i = 0; i < n; ++i) vd.coord[i] = vv[i].v;
    for (int a = 0; a < n; ++a) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) s += g[k][l] * vd.coord[k] * pd.ev[a][l];
        vd.lower[a] = s;
        vd.frame[a] = pd.eps[a] * s;
    }
    for (int a = 0; a < n; ++a) vd.norm2 += vd.frame[a] * vd.lower[a];
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) s += pd.ev[a][i] * nab[i][k] * g[k][l] * pd.ev[b][l];
            vd.s[a][b] = s;
        }
    for (int a = 0; a < n; ++a) vd.div += pd.eps[a] * vd.s[a][a];
    return vd;
}

Tensor4 curvature_via_lemma(const PointData& pd, const VectorFn& v, const TorsionSpec& base) {
    const int n = pd.n;
    const ConnCoeffs cc = connection_coeffs(pd, base);
    const Mat<double> g = primal(pd.g);
    Tensor4 r = to_frame(curvature_coord(cc, g), pd.ev);
    if (!v) return r;
    const VectorData vd = vector_data(pd, v, cc);
    const Arr3<double> t = to_frame(torsion_lowered(cc, g), pd.ev, n);
    const auto& s = vd.s;
    const auto& vl = vd.lower;
    const double v2 = vd.norm2;
    auto gf = [&](int a, int b) { return a == b ? double(pd.eps[a]) : 0.0; };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double x = gf(b, c) * s[a][d] - gf(a, c) * s[b][d];
                    x += (s[b][c] - gf(b, c) * v2 + vl[c] * vl[b]) * gf(a, d);
                    x -= (s[a][c] - gf(a, c) * v2 + vl[c] * vl[a]) * gf(b, d);
                    x += (gf(b, c) * vl[a] - gf(a, c) * vl[b]) * vl[d];
                    x += t[a][b][c] * vl[d] - vl[c] * t[a][b][d];
                    r.c[a][b][c][d] += x;
                }
    return r;
}

Tensor4 curvature_via_lemma(const Chart& chart, const Point& x, const VectorFn& v,
                            const TorsionSpec& base) {
    return curvature_via_lemma(point_data(chart, x), v, base);
}

Tensor2 ricci(const PointData& pd, const TorsionSpec& spec) {
    return ricci_contract(curvature_direct(pd, spec), pd.eps);
}

RicciData ricci_scalar_div(const PointData& pd, const TorsionSpec& spec) {
    const int n = pd.n;
    RicciData rd;
    rd.ric = ricci(pd, spec);
    rd.s = scalar_contract(rd.ric, pd.eps);

    const TorsionSpec base = spec.base();
    const ConnCoeffs cb = connection_coeffs(pd, base);
    const Mat<double> g = primal(pd.g);
    const Tensor2 ric_b = ricci_contract(to_frame(curvature_coord(cb, g), pd.ev), pd.eps);
    const double s_b = scalar_contract(ric_b, pd.eps);
    const VectorData vd = vector_data(pd, spec.vfield, cb);
    const Arr3<double> t = to_frame(torsion_lowered(cb, g), pd.ev, n);

    Vec<double> tr{};  // tr(X _| T) for X = e_a
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) tr[a] += pd.eps[i] * t[a][i][i];
    rd.div_v = vd.div;
    rd.tr_vt = 0.0;
    for (int a = 0; a < n; ++a) rd.tr_vt += vd.frame[a] * tr[a];

    rd.ric_lemma = ric_b;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double x = (a == b ? pd.eps[a] : 0.0) * (vd.div + (2.0 - n) * vd.norm2);
            x += (n - 2.0) * (vd.lower[a] * vd.lower[b] + vd.s[a][b]);
            x += vd.lower[b] * tr[a];
            for (int c = 0; c < n; ++c) x += vd.frame[c] * t[c][a][b];
            rd.ric_lemma.c[a][b] += x;
        }
    rd.s_lemma = s_b + 2.0 * (n - 1) * vd.div + (n - 1.0) * (2.0 - n) * vd.norm2 + 2.0 * rd.tr_vt;
    return rd;
}

RicciData ricci_scalar_div(const Chart& chart, const Point& x, const TorsionSpec& spec) {
    return ricci_scalar_div(point_data(chart, x), spec);
}

DvFlat dv_flat(const PointData& pd, const VectorFn& v) {
    const int n = pd.n;
    const Vec<Dual1> vv = eval_vector(pd, v);
    const Mat<double> g = primal(pd.g);
    Vec<Dual1> vl;
    for (int j = 0; j < kMaxDim; ++j) {
        vl[j] = Dual1(0.0);
        for (int m = 0; m < n; ++m) vl[j] += pd.g[j][m] * vv[m];
    }
    Mat<double> part = zero_mat<double>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) part[i][j] = vl[j].d[i];

    auto lowered_nabla = [&](const ConnCoeffs& cc) {
        Mat<double> m = zero_mat<double>();  // g(nabla_i V, d_j)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k) {
                    double nk = vv[k].d[i];
                    for (int l = 0; l < n; ++l) nk += cc.c[k][i][l].v * vv[l].v;
                    s += g[k][j] * nk;
                }
                m[i][j] = s;
            }
        return m;
    };
    DvFlat r;
    r.partials = Form2::skew_part(part, n, Basis::Coordinate);
    r.levi_civita = Form2::skew_part(lowered_nabla(connection_coeffs(pd, TorsionSpec::none())), n,
                                     Basis::Coordinate);
    r.vectorial = Form2::skew_part(lowered_nabla(connection_coeffs(pd, TorsionSpec::vectorial(v))),
                                   n, Basis::Coordinate);
    return r;
}

DvFlat dv_flat(const Chart& chart, const Point& x, const VectorFn& v) {
    return dv_flat(point_data(chart, x), v);
}

Form2 dv_flat_frame(const PointData& pd, const VectorFn& v) {
    const Form2 f = dv_flat(pd, v).partials;
    const Mat<double> m = f.matrix();
    Form2 out;
    out.n = pd.n;
    out.basis = Basis::Frame;
    for (int a = 0; a < pd.n; ++a)
        for (int b = a + 1; b < pd.n; ++b) {
            double s = 0.0;
            for (int i = 0; i < pd.n; ++i)
                for (int j = 0; j < pd.n; ++j) s += pd.ev[a][i] * pd.ev[b][j] * m[i][j];
            out.set(a, b, s);
        }
    return out;
}

double max_abs(const Form2& f) {
    double m = 0.0;
    for (double x : f.c) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace vtlab
