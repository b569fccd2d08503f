#pragma once

#include <cstdint>

#include "vtlab/chart.hpp"
#include "vtlab/clifford.hpp"
#include "vtlab/connection.hpp"
#include "vtlab/suite.hpp"

namespace vtlab {

// Orthonormal frame data for spinor calculus on a Riemannian chart.
template <typename T>
struct SpinFrame {
    int n = 0;
    Mat<T> e{};      // e[a][i]
    Mat<T> theta{};  // theta[a][i], dual coframe
    Arr3<T> omega{}; // omega[i][a][b] = g(nabla^g_{d_i} e_a, e_b)
    Vec<T> v{};      // V^a
    Vec<T> gv{};     // g(d_i, V)
};

// Frame data carrying first derivatives; `v` may be empty.
SpinFrame<Dual1> spin_frame(const Chart& chart, const Point& x, const VectorFn& v);
SpinFrame<double> value_part(const SpinFrame<Dual1>& sf);

// nabla^t_{d_i} psi = d_i psi + 1/4 omega_ab(d_i) g_a g_b psi + t/2 (d_i ^ V) . psi
// psi carries one derivative level more than the result.
template <typename T>
Spinor<T> cov_deriv(const SpinFrame<T>& sf, const CliffordRep& cl, const Spinor<Dual<T>>& psi,
                    int i, double t) {
    Spinor<T> r = partial(psi, i);
    const Spinor<T> p = value_part(psi);
    const int n = sf.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const CMat gab = cl.gamma[a] * cl.gamma[b];
            r = r + scale(T(0.25 * sf.omega[i][a][b]), act(gab, p));
        }
    if (t != 0.0) {
        // (X ^ V) . = X . V . + g(X, V)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const CMat gab = cl.gamma[a] * cl.gamma[b];
                r = r + scale(T(0.5 * t * sf.theta[a][i] * sf.v[b]), act(gab, p));
            }
        r = r + scale(T(0.5 * t * sf.gv[i]), p);
    }
    return r;
}

// D_t psi = sum_a e_a . nabla^t_{e_a} psi
template <typename T>
Spinor<T> dirac(const SpinFrame<T>& sf, const CliffordRep& cl, const Spinor<Dual<T>>& psi,
                double t) {
    Spinor<T> r = zero_spinor<T>();
    for (int i = 0; i < sf.n; ++i) {
        const Spinor<T> d = cov_deriv(sf, cl, psi, i, t);
        for (int a = 0; a < sf.n; ++a) r = r + act(cl.gamma[a], scale(sf.e[a][i], d));
    }
    return r;
}

// Adjoint variant D*_t = D^g + t (n-1)/2 V.
template <typename T>
Spinor<T> dirac_adjoint(const SpinFrame<T>& sf, const CliffordRep& cl, const Spinor<Dual<T>>& psi,
                        double t) {
    Spinor<T> r = dirac(sf, cl, psi, 0.0);
    const Spinor<T> p = value_part(psi);
    for (int a = 0; a < sf.n; ++a)
        r = r + scale(T(0.5 * t * (sf.n - 1) * sf.v[a]), act(cl.gamma[a], p));
    return r;
}

// Smooth random spinor field (trigonometric components).
SpinorFn random_spinor_field(const Chart& chart, int N, std::uint64_t seed);
Spinor<double> random_spinor(int N, std::uint64_t seed);

// Ric^V(X) . psi against -2 sum_k e_k . R(X, e_k) psi + c (dV ^ X) . psi over all
// frame directions X, with R(X,Y) acting as 1/4 sum R(X,Y,e_a,e_b) g_a g_b and
// k-forms as g_i1 ... g_ik. The identity holds for c = +1 in these conventions;
// c = -1 is the opposite sign and c = 0 the ablation.
inline constexpr double kDvSign = 1.0;
double ric_spinor_residual(const Chart& chart, const Point& x, const VectorFn& v,
                           const Spinor<double>& psi, double dv_coef = kDvSign);
SuiteResult check_ric_spinor_identity(const Chart& chart, const std::string& vname,
                                      const VectorFn& v, int samples, std::uint64_t seed,
                                      double tol);

struct KillingObstruction {
    double skew_part = 0.0;      // max |Re(X.psi, psi)|
    double trace_defect = 0.0;   // max |Re(V.X.psi, psi) + g(X,V)|psi|^2|
    double real_part_defect = 0.0;
    double witness = 0.0;        // real part for beta = 0.5, V = X = e_1, |psi| = 1
};

// Requires dV = 0 at the sample points (NotClosed otherwise).
KillingObstruction check_killing_obstruction(const Chart& chart, const VectorFn& v, double beta,
                                             int samples, std::uint64_t seed);

// Requires the named spinor field to be V-parallel (NotParallel otherwise).
SuiteResult check_parallel_spinor_consequences(const Chart& chart, const std::string& spinor,
                                               int samples, std::uint64_t seed, double tol);

// [nabla_i, nabla_j] psi against the lifted curvature, on a random field.
double spinor_curvature_residual(const Chart& chart, const Point& x, const VectorFn& v, double t,
                                 std::uint64_t seed);
// d_i (psi, phi) against (nabla_i psi, phi) + (psi, nabla_i phi).
double metric_compatibility_residual(const Chart& chart, const Point& x, const VectorFn& v,
                                     std::uint64_t seed);
// D^{g~} psi~ against e^{-f} D psi for g~ = e^{2f} g and V = -grad f.
double conformal_dirac_residual(const Chart& chart, const std::string& fname, const Point& x,
                                std::uint64_t seed);

}  // namespace vtlab
