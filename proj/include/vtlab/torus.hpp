#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vtlab/chart.hpp"
#include "vtlab/clifford.hpp"
#include "vtlab/parallel.hpp"
#include "vtlab/suite.hpp"

namespace vtlab {

// Boundary signs psi(0,y) = (-1)^e1 psi(1,y), psi(x,0) = (-1)^e2 psi(x,1) on the
// unit square torus; the Fourier lattice is Z^2 + (e1, e2)/2.
struct SpinStructure {
    int e1 = 0;
    int e2 = 0;
};

std::vector<SpinStructure> all_spin_structures();

using Mode = std::array<int, kMaxDim>;

// Modes k + shift with |k_a| <= K on the unit torus of dimension dim.
struct FourierSpace {
    int dim = 2;
    int K = 8;
    int N = 2;  // spinor dimension
    Vec<double> shift{};

    FourierSpace() = default;
    FourierSpace(int dim, int K, const Vec<double>& shift);

    int modes() const;
    int size() const { return N * modes(); }
    Mode mode(int m) const;
    int index(const Mode& k) const;  // -1 outside the cutoff
    double freq(int m, int a) const;  // 2 pi (k_a + shift_a)
};

// Finite trigonometric polynomial sum c_m exp(2 pi i m.x), integer modes.
struct TrigPoly {
    int dim = 2;
    std::map<Mode, std::complex<double>> c;

    int bandwidth() const;  // max |m_a|
    std::complex<double> eval(const Point& x) const;
    TrigPoly derivative(int a) const;
    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;
    TrigPoly scaled(std::complex<double> s) const;
    void prune(double tol = 1e-13);
};

// Exact coefficients of a smooth periodic function with bandwidth below L/2,
// by sampling on an L^dim grid.
TrigPoly trig_poly(const std::function<double(const Point&)>& f, int dim, int L = 16);
std::array<TrigPoly, kMaxDim> vector_poly(const VectorFn& v, int dim, int L = 16);
TrigPoly constant_poly(int dim, double value);

// Sparse building blocks on a Fourier space, acting on coefficient vectors with
// the spinor index running fastest.
struct TorusOps {
    FourierSpace fs;
    CliffordRep cl;

    explicit TorusOps(const FourierSpace& fs);
    SpMat identity() const;
    SpMat partial(int a) const;                  // d_a
    SpMat gamma(int a) const;                    // constant Clifford action
    SpMat clifford(const CMat& m) const;         // constant matrix on every mode
    SpMat mult(const TrigPoly& f) const;         // truncated convolution
    SpMat vector(const std::array<TrigPoly, kMaxDim>& v) const;  // V.
};

struct DiracMatrix {
    FourierSpace fs;
    SpinStructure spin;
    double t = 1.0;
    int bandwidth = 0;
    bool self_adjoint = false;
    SpMat op;
};

// D_t = sum_a g_a d_a - t (n-1)/2 V. on the truncated space.
DiracMatrix build_dirac(const SpinStructure& spin, const std::array<TrigPoly, kMaxDim>& v,
                        double t, int K);

// The m eigenvalues of smallest modulus, ordered by (|lambda|, arg lambda).
// Independent blocks of the sparsity graph are solved separately.
std::vector<std::complex<double>> spectrum(const DiracMatrix& d, int m, Exec mode = Exec::Serial);
std::vector<std::complex<double>> spectrum_all(const DiracMatrix& d, Exec mode = Exec::Serial);

// Evaluates a coefficient vector as a spinor field (values and jets).
SpinorFn fourier_field(const FourierSpace& fs, const CVecX& coeffs);
// Random coefficients on modes with |k_a| <= kmax.
CVecX random_coefficients(const FourierSpace& fs, int kmax, std::uint64_t seed);

struct IsospectralResult {
    SpinStructure spin;
    std::string f_name;
    double max_distance = 0.0;
    double max_modulus = 0.0;  // largest |lambda| among the compared ones
    int compared = 0;
    std::vector<std::complex<double>> values;  // spectrum of D_V
    std::vector<std::complex<double>> paired;  // matched Riemannian eigenvalue
};

// Registered potentials f for V = grad f on the unit 2-torus, by name.
struct NamedPotential {
    std::string name;
    std::function<double(const Point&)> f;
};
const std::vector<NamedPotential>& torus_potentials();
const NamedPotential& find_potential(const std::string& name);  // UnknownId when absent

IsospectralResult compare_isospectral(const SpinStructure& spin, const TrigPoly& f,
                                      const std::string& f_name, int K, int m);

struct ParallelDetection {
    SpinStructure spin;
    double v1 = 0.0, v2 = 0.0;
    int oracle_dim = 0;         // joint fixed space of the transport operators
    int pointwise_dim = 0;      // basis fields passing the jet and boundary checks
    double parallel_residual = 0.0;  // max |nabla psi| over the basis fields
    int kernel_dim = 0;         // dim ker D_V over all modes
    bool displayed_predicts = false;  // closed-form torus condition (v1, v2 in 2 pi Z)
    bool agree = false;         // oracle == pointwise == kernel
    bool displayed_agree = false;     // closed-form condition matches the oracle
};

ParallelDetection parallel_spinor_detect(const SpinStructure& spin, double v1, double v2,
                                         int K = 8);
// v1, v2 in {0, pi, ..., (g-1) pi} for all four spin structures.
std::vector<ParallelDetection> parallel_grid(int g, Exec mode = Exec::Serial);

// Operator identities (DD), (Lresc), (L) and the D_t^* D_t formula on the flat
// torus of dimension dim, applied to random band-limited spinor fields.
SuiteResult check_lichnerowicz(int dim, const std::array<TrigPoly, kMaxDim>& v,
                               const std::string& vname, double t, int K, int fields,
                               std::uint64_t seed, double tol);

}  // namespace vtlab
