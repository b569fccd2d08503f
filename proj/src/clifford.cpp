#include "vtlab/clifford.hpp"

namespace vtlab {

namespace {
CMat pauli(int k) {
    CMat m = CMat::Zero(2, 2);
    const cd i(0.0, 1.0);
    switch (k) {
        case 0: m << 1.0, 0.0, 0.0, 1.0; break;
        case 1: m << 0.0, 1.0, 1.0, 0.0; break;
        case 2: m << 0.0, -i, i, 0.0; break;
        default: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat r = CMat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}
}  // namespace

CliffordRep build_clifford(int n) {
    if (n < 2 || n > 4) {
        throw Error(ErrorKind::UnsupportedDimension,
                    "Clifford representation for n = " + std::to_string(n));
    }
    CliffordRep c;
    c.n = n;
    c.N = n == 4 ? 4 : 2;
    const cd i(0.0, 1.0);
    // gamma = i * (hermitian anticommuting set)
    if (n == 2) {
        c.gamma[0] = i * pauli(1);
        c.gamma[1] = i * pauli(2);
    } else if (n == 3) {
        c.gamma[0] = i * pauli(1);
        c.gamma[1] = i * pauli(2);
        c.gamma[2] = i * pauli(3);
    } else {
        c.gamma[0] = i * kron(pauli(1), pauli(1));
        c.gamma[1] = i * kron(pauli(2), pauli(1));
        c.gamma[2] = i * kron(pauli(3), pauli(1));
        c.gamma[3] = i * kron(pauli(0), pauli(2));
    }
    for (int a = n; a < kMaxDim; ++a) c.gamma[a] = CMat::Zero(c.N, c.N);
    return c;
}

CMat CliffordRep::vector(const Vec<double>& x) const {
    CMat m = CMat::Zero(N, N);
    for (int a = 0; a < n; ++a) m += x[a] * gamma[a];
    return m;
}

CMat CliffordRep::two_form(const Mat<double>& a) const {
    CMat m = CMat::Zero(N, N);
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) m += a[p][q] * (gamma[p] * gamma[q]);
    return m;
}

CMat CliffordRep::three_form(const Form3& w) const {
    CMat m = CMat::Zero(N, N);
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            for (int r = q + 1; r < n; ++r) m += w(p, q, r) * (gamma[p] * gamma[q] * gamma[r]);
    return m;
}

CMat CliffordRep::lift(const Mat<double>& a) const {
    CMat m = CMat::Zero(N, N);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) m += 0.25 * a[p][q] * (gamma[p] * gamma[q]);
    return m;
}

CMat CliffordRep::volume() const {
    CMat m = identity();
    for (int a = 0; a < n; ++a) m = m * gamma[a];
    return m;
}

CVec to_cvec(const Spinor<double>& s, int N) {
    CVec v(N);
    for (int i = 0; i < N; ++i) v(i) = cd(s[i].re, s[i].im);
    return v;
}

Spinor<double> from_cvec(const CVec& v) {
    Spinor<double> s = zero_spinor<double>();
    for (int i = 0; i < v.size(); ++i) s[i] = {v(i).real(), v(i).imag()};
    return s;
}

double max_abs(const Spinor<double>& s) {
    double m = 0.0;
    for (const auto& c : s) m = std::max(m, std::hypot(c.re, c.im));
    return m;
}

cd hermitian(const CVec& psi, const CVec& phi) { return phi.dot(psi); }

}  // namespace vtlab
