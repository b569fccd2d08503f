#pragma once

#include <Eigen/Dense>
#include <complex>

#include "vtlab/core.hpp"
#include "vtlab/tensor.hpp"

namespace vtlab {

using cd = std::complex<double>;
using CMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSpinor, kMaxSpinor>;
using CVec = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, kMaxSpinor, 1>;

// Generators with g_a g_b + g_b g_a = -2 delta_ab, each skew-hermitian.
struct CliffordRep {
    int n = 0;
    int N = 0;  // spinor dimension 2^(n/2)
    std::array<CMat, kMaxDim> gamma;

    CMat identity() const { return CMat::Identity(N, N); }
    CMat vector(const Vec<double>& x) const;     // sum_a x^a g_a
    CMat two_form(const Mat<double>& a) const;   // sum_{a<b} a_ab g_a g_b
    CMat three_form(const Form3& w) const;       // sum_{a<b<c} w_abc g_a g_b g_c
    CMat lift(const Mat<double>& a) const;       // 1/4 sum_ab a_ab g_a g_b
    CMat volume() const;                         // g_1 ... g_n
};

CliffordRep build_clifford(int n);

template <typename T>
Spinor<T> act(const CMat& m, const Spinor<T>& s) {
    Spinor<T> r = zero_spinor<T>();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const cd c = m(i, j);
            if (c == cd(0.0)) continue;
            r[i].re = r[i].re + c.real() * s[j].re - c.imag() * s[j].im;
            r[i].im = r[i].im + c.real() * s[j].im + c.imag() * s[j].re;
        }
    return r;
}

template <typename T>
Spinor<T> scale(const T& a, const Spinor<T>& s) {
    Spinor<T> r;
    for (int i = 0; i < kMaxSpinor; ++i) r[i] = a * s[i];
    return r;
}

template <typename T>
Spinor<T> operator+(const Spinor<T>& a, const Spinor<T>& b) {
    Spinor<T> r;
    for (int i = 0; i < kMaxSpinor; ++i) r[i] = a[i] + b[i];
    return r;
}

template <typename T>
Spinor<T> operator-(const Spinor<T>& a, const Spinor<T>& b) {
    Spinor<T> r;
    for (int i = 0; i < kMaxSpinor; ++i) r[i] = a[i] - b[i];
    return r;
}

CVec to_cvec(const Spinor<double>& s, int N);
Spinor<double> from_cvec(const CVec& v);
double max_abs(const Spinor<double>& s);

// Hermitian product (psi, phi) = phi^H psi.
cd hermitian(const CVec& psi, const CVec& phi);

}  // namespace vtlab
