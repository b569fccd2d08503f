#pragma once

#include <cstdint>

#include "vtlab/core.hpp"

namespace vtlab {

enum class Basis { Coordinate, Frame };

struct Tensor2 {
    int n = 0;
    Basis basis = Basis::Frame;
    Mat<double> c{};
};

// c[i][j][k][l] = R(e_i, e_j, e_k, e_l) = g(R(e_i,e_j)e_k, e_l)
struct Tensor4 {
    int n = 0;
    Basis basis = Basis::Frame;
    Arr4<double> c{};
};

Tensor2 zero_tensor2(int n, Basis b);
Tensor4 zero_tensor4(int n, Basis b);

// Storage index of the pair i<j (n <= 4: 6 slots).
int pair_index(int i, int j);
// Storage index of the triple i<j<k (n <= 4: 4 slots).
int triple_index(int i, int j, int k);

struct Form2 {
    int n = 0;
    Basis basis = Basis::Frame;
    std::array<double, 6> c{};

    double operator()(int i, int j) const;
    void set(int i, int j, double v);  // i != j
    static Form2 skew_part(const Mat<double>& m, int n, Basis b);  // (m - m^T)
    Mat<double> matrix() const;
};

struct Form3 {
    int n = 0;
    Basis basis = Basis::Frame;
    std::array<double, 4> c{};

    double operator()(int i, int j, int k) const;
    void set(int i, int j, int k, double v);  // distinct indices
};

// T(X,Y,Z) with T(X,Y,Z) = -T(Y,X,Z) held by storage.
struct TorsionTensor {
    int n = 0;
    std::array<Vec<double>, 6> c{};

    double operator()(int i, int j, int k) const;
    void set(int i, int j, int k, double v);
};

Tensor4 kulkarni_nomizu(const Tensor2& a, const Tensor2& b);

// Ric_ab = sum_i eps_i R(e_a, e_i, e_i, e_b)
Tensor2 ricci_contract(const Tensor4& r, const Signature& eps);
double scalar_contract(const Tensor2& ric, const Signature& eps);

double pair_symmetry_defect(const Tensor4& r);
// max of |R_ijkl + R_jikl| and |R_ijkl + R_ijlk|
double antisymmetry_defect(const Tensor4& r);

double max_abs(const Tensor4& r);
double max_abs(const Tensor2& r);
// max |a - b| / (1 + max(|a|, |b|))
double normalized_diff(const Tensor4& a, const Tensor4& b);
double normalized_diff(const Tensor2& a, const Tensor2& b);

Tensor4 operator+(const Tensor4& a, const Tensor4& b);
Tensor4 operator-(const Tensor4& a, const Tensor4& b);
Tensor4 operator*(double s, const Tensor4& a);
Tensor2 operator+(const Tensor2& a, const Tensor2& b);
Tensor2 operator-(const Tensor2& a, const Tensor2& b);
Tensor2 operator*(double s, const Tensor2& a);

// Metric diag(eps) in an orthonormal frame.
Tensor2 frame_metric(int n, const Signature& eps);

// T_V(X,Y,Z) = g(V,X) g(Y,Z) - g(V,Y) g(X,Z); V given by frame components V^a.
TorsionTensor vectorial_torsion(const Vec<double>& v, int n, const Signature& eps);
TorsionTensor torsion_from_form(const Form3& w);
TorsionTensor operator+(const TorsionTensor& a, const TorsionTensor& b);
TorsionTensor operator-(const TorsionTensor& a, const TorsionTensor& b);
double torsion_inner(const TorsionTensor& a, const TorsionTensor& b, const Signature& eps);
double max_abs(const TorsionTensor& t);

struct TorsionParts {
    Vec<double> v{};  // frame components V^a
    Form3 s;
    TorsionTensor vectorial;
    TorsionTensor skew;
    TorsionTensor rest;
};

TorsionParts torsion_decompose(const TorsionTensor& t, const Signature& eps);

TorsionTensor random_torsion(int n, std::uint64_t seed);

struct TorsionAudit {
    int n = 0;
    int rank_vectorial = 0;
    int rank_skew = 0;
    int rank_rest = 0;
    int total = 0;               // n^2 (n-1) / 2
    double idempotence = 0.0;    // largest defect of re-decomposing a part
    double orthogonality = 0.0;  // largest |<part_i, part_j>|, i != j
    double reconstruction = 0.0;
};

// Ranks are those of the span of `samples` draws; n^2(n-1)/2 draws are needed
// to see the full dimensions.
TorsionAudit audit_torsion_decomposition(int n, const Signature& eps, int samples,
                                         std::uint64_t seed);

}  // namespace vtlab
