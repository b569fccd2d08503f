#pragma once

#include "vtlab/chart.hpp"
#include "vtlab/tensor.hpp"

namespace vtlab {

// Torsion added to the Levi-Civita connection. Either part may be empty.
struct TorsionSpec {
    VectorFn vfield;  // vectorial part A_V
    FormFn form;      // skew part, A(X)Y = 1/2 w(X,Y,.)^#

    static TorsionSpec none() { return {}; }
    static TorsionSpec vectorial(VectorFn v) { return {std::move(v), {}}; }
    TorsionSpec base() const { return {{}, form}; }  // drops the vectorial part
};

// Geometry at one point with exact first derivatives.
struct PointData {
    int n = 0;
    Point x{};
    Signature eps{1, 1, 1, 1};
    Vec<Dual2> xs{};
    Mat<Dual1> g{};
    Mat<Dual1> ginv{};
    Arr3<Dual1> gamma{};  // Levi-Civita gamma[k][i][j] = Gamma^k_ij
    Mat<Dual1> e{};       // orthonormal frame, e[a][i], with first derivatives
    Mat<double> ev{};     // frame values
};

PointData point_data(const Chart& chart, const Point& x);

// nabla_{d_i} d_j = c[k][i][j] d_k, each coefficient carrying its first partials.
struct ConnCoeffs {
    int n = 0;
    Arr3<Dual1> c{};
};

ConnCoeffs christoffel(const Chart& chart, const Point& x);
ConnCoeffs connection_coeffs(const PointData& pd, const TorsionSpec& spec);

// A[k][i][j]: component k of A_V(d_i) d_j = g_ij V^k - V_j delta^k_i.
template <typename T>
Arr3<T> vectorial_A(const Mat<T>& g, const Vec<T>& v, int n) {
    Arr3<T> a = zero_arr3<T>();
    Vec<T> vl;
    for (int j = 0; j < n; ++j) {
        vl[j] = T(0.0);
        for (int m = 0; m < n; ++m) vl[j] = vl[j] + g[j][m] * v[m];
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a[k][i][j] = g[i][j] * v[k];
                if (k == i) a[k][i][j] = a[k][i][j] - vl[j];
            }
    return a;
}

// A[k][i][j] = 1/2 g^{kl} w_ijl
template <typename T>
Arr3<T> skew_A(const Mat<T>& ginv, const Arr3<T>& w, int n) {
    Arr3<T> a = zero_arr3<T>();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                T s(0.0);
                for (int l = 0; l < n; ++l) s = s + ginv[k][l] * w[i][j][l];
                a[k][i][j] = 0.5 * s;
            }
    return a;
}

// Torsion T(d_i, d_j) lowered: t[i][j][k] = g(T(d_i,d_j), d_k).
Arr3<double> torsion_lowered(const ConnCoeffs& cc, const Mat<double>& g);

Tensor4 curvature_coord(const ConnCoeffs& cc, const Mat<double>& g);
Tensor4 to_frame(const Tensor4& r, const Mat<double>& e);
Tensor2 to_frame(const Tensor2& t, const Mat<double>& e);
Arr3<double> to_frame(const Arr3<double>& t, const Mat<double>& e, int n);

Tensor4 curvature_direct(const Chart& chart, const Point& x, const TorsionSpec& spec);
Tensor4 curvature_direct(const PointData& pd, const TorsionSpec& spec);

// Base curvature of `base` transformed by the closed-form rule for adding A_V.
Tensor4 curvature_via_lemma(const Chart& chart, const Point& x, const VectorFn& v,
                            const TorsionSpec& base);
Tensor4 curvature_via_lemma(const PointData& pd, const VectorFn& v, const TorsionSpec& base);

struct VectorData {
    Vec<double> coord{};  // V^i
    Vec<double> frame{};  // V^a
    Vec<double> lower{};  // V_a = g(V, e_a)
    double norm2 = 0.0;   // g(V,V)
    Mat<double> s{};      // s[a][b] = g(nabla_{e_a} V, e_b) for the given connection
    double div = 0.0;
};

VectorData vector_data(const PointData& pd, const VectorFn& v, const ConnCoeffs& cc);

struct RicciData {
    Tensor2 ric;
    double s = 0.0;
    double div_v = 0.0;
    double tr_vt = 0.0;  // sum_i eps_i g(T(V, e_i), e_i) of the base connection
    Tensor2 ric_lemma;
    double s_lemma = 0.0;
};

RicciData ricci_scalar_div(const Chart& chart, const Point& x, const TorsionSpec& spec);
RicciData ricci_scalar_div(const PointData& pd, const TorsionSpec& spec);

// Ricci tensor and scalar curvature of a connection, frame basis.
Tensor2 ricci(const PointData& pd, const TorsionSpec& spec);

struct DvFlat {
    Form2 levi_civita;  // g(nabla^g_X V, Y) - g(nabla^g_Y V, X)
    Form2 vectorial;    // same with nabla^g + A_V
    Form2 partials;     // d_i V_j - d_j V_i
};

// Coordinate basis.
DvFlat dv_flat(const Chart& chart, const Point& x, const VectorFn& v);
DvFlat dv_flat(const PointData& pd, const VectorFn& v);
Form2 dv_flat_frame(const PointData& pd, const VectorFn& v);

double max_abs(const Form2& f);

// Evaluate V at the seeded point; value and first partials.
Vec<Dual1> eval_vector(const PointData& pd, const VectorFn& v);
Arr3<Dual1> eval_form(const PointData& pd, const FormFn& w);

}  // namespace vtlab
