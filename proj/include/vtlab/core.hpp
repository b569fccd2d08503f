#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "vtlab/dual.hpp"

namespace vtlab {

template <typename T>
using Vec = std::array<T, kMaxDim>;
template <typename T>
using Mat = std::array<Vec<T>, kMaxDim>;
template <typename T>
using Arr3 = std::array<Mat<T>, kMaxDim>;
template <typename T>
using Arr4 = std::array<Arr3<T>, kMaxDim>;

using Signature = std::array<int, kMaxDim>;
using Point = Vec<double>;

enum class ErrorKind {
    DegenerateMetric,
    FrameConstructionFailed,
    BasisMismatch,
    DimensionTooSmall,
    UnsupportedDimension,
    UnsupportedChart,
    InvalidWarp,
    DivergenceNotZero,
    NotClosed,
    NotParallel,
    CutoffTooSmall,
    SolverFailure,
    UnknownId,
    Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <typename T>
Mat<T> zero_mat() {
    Mat<T> m;
    for (auto& row : m) row.fill(T(0.0));
    return m;
}

template <typename T>
Arr3<T> zero_arr3() {
    Arr3<T> a;
    for (auto& m : a) m = zero_mat<T>();
    return a;
}

// Gauss-Jordan inverse of the leading n x n block, pivoting on primal magnitude.
template <typename T>
Mat<T> inverse(const Mat<T>& m, int n) {
    Mat<T> a = m;
    Mat<T> inv = zero_mat<T>();
    for (int i = 0; i < n; ++i) inv[i][i] = T(1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(primal(a[r][col])) > std::abs(primal(a[piv][col]))) piv = r;
        }
        if (primal(a[piv][col]) == 0.0) {
            throw Error(ErrorKind::DegenerateMetric, "singular matrix in inverse");
        }
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const T p = T(1.0) / a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] = a[col][j] * p;
            inv[col][j] = inv[col][j] * p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const T f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

template <typename T>
T determinant(const Mat<T>& m, int n) {
    Mat<T> a = m;
    T det = T(1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(primal(a[r][col])) > std::abs(primal(a[piv][col]))) piv = r;
        }
        if (primal(a[piv][col]) == 0.0) return T(0.0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det = det * a[col][col];
        for (int r = col + 1; r < n; ++r) {
            const T f = a[r][col] / a[col][col];
            for (int j = col; j < n; ++j) a[r][j] = a[r][j] - f * a[col][j];
        }
    }
    return det;
}

// Value part of a Mat/Vec of duals (drops one nesting level).
template <typename T>
Vec<T> value_part(const Vec<Dual<T>>& v) {
    Vec<T> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = v[i].v;
    return r;
}
template <typename T>
Mat<T> value_part(const Mat<Dual<T>>& m) {
    Mat<T> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = value_part(m[i]);
    return r;
}
template <typename T>
Arr3<T> value_part(const Arr3<Dual<T>>& a) {
    Arr3<T> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = value_part(a[i]);
    return r;
}

template <typename T>
Vec<double> primal(const Vec<Dual<T>>& v) {
    Vec<double> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = primal(v[i]);
    return r;
}
template <typename T>
Mat<double> primal(const Mat<Dual<T>>& m) {
    Mat<double> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = primal(m[i]);
    return r;
}
template <typename T>
Arr3<double> primal(const Arr3<Dual<T>>& a) {
    Arr3<double> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = primal(a[i]);
    return r;
}

// Partial derivative along coordinate k (drops one nesting level).
template <typename T>
Vec<T> partial(const Vec<Dual<T>>& v, int k) {
    Vec<T> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = v[i].d[k];
    return r;
}
template <typename T>
Mat<T> partial(const Mat<Dual<T>>& m, int k) {
    Mat<T> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = partial(m[i], k);
    return r;
}
template <typename T>
Arr3<T> partial(const Arr3<Dual<T>>& a, int k) {
    Arr3<T> r;
    for (int i = 0; i < kMaxDim; ++i) r[i] = partial(a[i], k);
    return r;
}

// Minimal complex type over an arbitrary (dual) scalar; std::complex is only
// specified for the built-in floating types.
template <typename T>
struct Cplx {
    T re{};
    T im{};

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const T& s, const Cplx& a) { return {s * a.re, s * a.im}; }
    Cplx& operator+=(const Cplx& o) {
        re = re + o.re;
        im = im + o.im;
        return *this;
    }
};

inline constexpr int kMaxSpinor = 4;

template <typename T>
using Spinor = std::array<Cplx<T>, kMaxSpinor>;

template <typename T>
Spinor<T> zero_spinor() {
    Spinor<T> s;
    for (auto& c : s) c = {T(0.0), T(0.0)};
    return s;
}

template <typename T>
Spinor<T> value_part(const Spinor<Dual<T>>& s) {
    Spinor<T> r;
    for (int i = 0; i < kMaxSpinor; ++i) r[i] = {s[i].re.v, s[i].im.v};
    return r;
}
template <typename T>
Spinor<T> partial(const Spinor<Dual<T>>& s, int k) {
    Spinor<T> r;
    for (int i = 0; i < kMaxSpinor; ++i) r[i] = {s[i].re.d[k], s[i].im.d[k]};
    return r;
}

}  // namespace vtlab
