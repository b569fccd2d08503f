#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <random>

#include "vtlab/catalog.hpp"
#include "vtlab/matching.hpp"
#include "vtlab/spin.hpp"
#include "vtlab/torus.hpp"

using namespace vtlab;
using cplx = std::complex<double>;

namespace {

std::array<TrigPoly, kMaxDim> zero_field(int dim = 2) {
    std::array<TrigPoly, kMaxDim> v;
    for (auto& p : v) p = TrigPoly{dim, {}};
    return v;
}

std::array<TrigPoly, kMaxDim> const_field(double a, double b) {
    auto v = zero_field();
    v[0] = constant_poly(2, a);
    v[1] = constant_poly(2, b);
    return v;
}

// Eigenvalues of the symbol i g(xi) - (1/2) g(V) on every mode, computed directly.
std::vector<cplx> symbol_spectrum(const SpinStructure& s, double v1, double v2, int K) {
    const CliffordRep cl = build_clifford(2);
    std::vector<cplx> out;
    for (int k1 = -K; k1 <= K; ++k1)
        for (int k2 = -K; k2 <= K; ++k2) {
            const double x1 = 2 * kPi * (k1 + 0.5 * s.e1), x2 = 2 * kPi * (k2 + 0.5 * s.e2);
            const Eigen::MatrixXcd m = cplx(0, 1) * (x1 * cl.gamma[0] + x2 * cl.gamma[1]) -
                                       0.5 * (v1 * cl.gamma[0] + v2 * cl.gamma[1]);
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
            for (int i = 0; i < 2; ++i) out.push_back(es.eigenvalues()[i]);
        }
    return out;
}

}  // namespace

TEST_CASE("flat torus spectrum with V = 0 is +-2 pi |k + shift|") {
    const DiracMatrix d = build_dirac({0, 0}, zero_field(), 1.0, 8);
    CHECK(d.self_adjoint);
    CHECK(SpMat(d.op - SpMat(d.op.adjoint())).norm() < 1e-12);
    const auto ev = spectrum(d, 10);
    REQUIRE(ev.size() == 10);
    CHECK(std::abs(ev[0]) < 1e-12);
    CHECK(std::abs(ev[1]) < 1e-12);
    for (int i = 2; i < 10; ++i) {
        CHECK(std::abs(ev[i].imag()) < 1e-12);
        CHECK(std::abs(ev[i]) == doctest::Approx(2 * kPi));
    }
    // four +2 pi and four -2 pi
    CHECK(std::count_if(ev.begin() + 2, ev.end(), [](cplx z) { return z.real() > 0; }) == 4);

    const auto shifted = spectrum(build_dirac({1, 1}, zero_field(), 1.0, 8), 8);
    for (const cplx& z : shifted) CHECK(std::abs(z) == doctest::Approx(kPi * std::sqrt(2.0)));
}

TEST_CASE("constant V: the truncated spectrum is the union of the symbol spectra") {
    for (const SpinStructure& s : all_spin_structures()) {
        const int K = 8;
        const auto want = symbol_spectrum(s, 1.1, -0.4, K);
        const auto got = spectrum_all(build_dirac(s, const_field(1.1, -0.4), 1.0, K));
        REQUIRE(got.size() == want.size());
        CHECK(pair_spectra(got, want).max_distance < 1e-9);
    }
}

TEST_CASE("D_V is not self-adjoint for V != 0 and its adjoint carries +V") {
    const DiracMatrix d = build_dirac({0, 0}, const_field(0.5, 0.0), 1.0, 8);
    CHECK_FALSE(d.self_adjoint);
    const SpMat adj = d.op.adjoint();
    CHECK(SpMat(d.op - adj).norm() > 1.0);
    // D* = D^g + V., D = D^g - V. on the 2-torus (n - 1 = 1)
    const DiracMatrix dg = build_dirac({0, 0}, zero_field(), 1.0, 8);
    const TorusOps ops(dg.fs);
    const SpMat want = dg.op + SpMat(cplx(0.5) * ops.vector(const_field(0.5, 0.0)));
    CHECK(SpMat(adj - want).norm() < 1e-12);
}

TEST_CASE("truncated matrix agrees with the pointwise Dirac operator") {
    const auto c = find_chart("flat_torus_2");
    const CliffordRep cl = build_clifford(2);
    for (const char* vname : {"gradsinx", "siny", "const"}) {
        CAPTURE(vname);
        const VectorFn v = c->vfield(vname);
        const auto vp = vector_poly(v, 2);
        for (const SpinStructure& s : all_spin_structures()) {
            const DiracMatrix d = build_dirac(s, vp, 1.0, 12);
            const CVecX coeffs = random_coefficients(d.fs, 4, 17 + s.e1 + 2 * s.e2);
            const SpinorFn psi = fourier_field(d.fs, coeffs);
            const SpinorFn dpsi = fourier_field(d.fs, sparse_apply(d.op, coeffs, Exec::Serial));
            for (const Point& x : sample_points(*c, 5, 3)) {
                const SpinFrame<double> sf = value_part(spin_frame(*c, x, v));
                const Spinor<double> point = dirac(sf, cl, value_part(psi(seed_point(x))), 1.0);
                const Spinor<double> matrix = value_part(value_part(dpsi(seed_point(x))));
                CHECK(max_abs(point - matrix) < 1e-10);
            }
        }
    }
}

TEST_CASE("trigonometric polynomials") {
    const TrigPoly f = trig_poly([](const Point& x) { return 0.2 * std::sin(2 * kPi * x[0]); }, 2);
    CHECK(f.c.size() == 2);
    CHECK(std::abs(f.c.at(Mode{1, 0, 0, 0}) - cplx(0, -0.1)) < 1e-15);
    CHECK(std::abs(f.c.at(Mode{-1, 0, 0, 0}) - cplx(0, 0.1)) < 1e-15);
    CHECK(f.bandwidth() == 1);
    const TrigPoly df = f.derivative(0);
    for (const Point& x : {Point{0.1, 0.3}, Point{0.77, 0.2}}) {
        CHECK(std::abs(df.eval(x) - 0.4 * kPi * std::cos(2 * kPi * x[0])) < 1e-13);
        CHECK(std::abs((f * f).eval(x) - std::pow(0.2 * std::sin(2 * kPi * x[0]), 2)) < 1e-15);
    }
    CHECK(f.derivative(1).c.empty());
    CHECK_THROWS_AS(build_dirac({0, 0}, vector_poly(find_chart("flat_torus_2")->vfield("siny"), 2), 1.0, 1), Error);
}

TEST_CASE("Hungarian assignment matches brute force") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        const int rows = 2 + trial % 4, cols = rows + trial % 3;
        std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
        for (auto& r : cost)
            for (double& x : r) x = u(rng);
        const std::vector<int> m = hungarian(cost);
        double got = 0;
        for (int i = 0; i < rows; ++i) got += cost[i][m[i]];
        std::vector<int> cs(cols);
        std::iota(cs.begin(), cs.end(), 0);
        double best = 1e300;
        do {
            double s = 0;
            for (int i = 0; i < rows; ++i) s += cost[i][cs[i]];
            best = std::min(best, s);
        } while (std::next_permutation(cs.begin(), cs.end()));
        CHECK(got == doctest::Approx(best).epsilon(1e-14));
        std::vector<int> sorted = m;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("spectra with V = grad f match the Riemannian ones") {
    for (const NamedPotential& p : torus_potentials()) {
        CAPTURE(p.name);
        const IsospectralResult r = compare_isospectral({0, 1}, trig_poly(p.f, 2), p.name, 16, 30);
        CHECK(r.compared == 30);
        CHECK(r.max_distance < 1e-6);
    }
    CHECK_THROWS_AS(find_potential("no_such_potential"), Error);
}

TEST_CASE("parallel spinors on the flat 2-torus with constant V") {
    const ParallelDetection zero = parallel_spinor_detect({0, 0}, 0.0, 0.0);
    CHECK(zero.oracle_dim == 2);
    CHECK(zero.kernel_dim == 2);
    CHECK(zero.agree);
    CHECK(parallel_spinor_detect({1, 0}, 0.0, 0.0).oracle_dim == 0);
    // transport exp(-pi omega) = -Id around the x-loop: no parallel spinor for
    // the trivial structure, two for the non-trivial one
    const ParallelDetection a = parallel_spinor_detect({0, 0}, 0.0, 2 * kPi);
    CHECK(a.oracle_dim == 0);
    CHECK(a.agree);
    const ParallelDetection b = parallel_spinor_detect({1, 0}, 0.0, 2 * kPi);
    CHECK(b.oracle_dim == 2);
    CHECK(b.kernel_dim == 2);
    CHECK(b.parallel_residual < 1e-10);
}

TEST_CASE("quadrature, sparse products and grids are identical serial and parallel") {
    const Point per{1, 1, 1, 0};
    auto f = [](const Point& x) { return std::pow(std::cos(2 * kPi * x[0]) * std::sin(2 * kPi * x[2]), 2) + x[1] * 0; };
    const double s = trapezoid(f, 3, per, 8, Exec::Serial);
    CHECK(s == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s == trapezoid(f, 3, per, 8, Exec::Parallel));

    const DiracMatrix d = build_dirac({0, 1}, vector_poly(find_chart("flat_torus_2")->vfield("siny"), 2), 1.0, 16);
    const CVecX x = random_coefficients(d.fs, 16, 3);
    const CVecX a = sparse_apply(d.op, x, Exec::Serial), b = sparse_apply(d.op, x, Exec::Parallel);
    CHECK((a - b).norm() == 0.0);
    CHECK((a - d.op * x).norm() < 1e-10);

    const auto g1 = parallel_grid(3, Exec::Serial), g2 = parallel_grid(3, Exec::Parallel);
    REQUIRE(g1.size() == g2.size());
    for (size_t i = 0; i < g1.size(); ++i) {
        CHECK(g1[i].kernel_dim == g2[i].kernel_dim);
        CHECK(g1[i].parallel_residual == g2[i].parallel_residual);
        CHECK(g1[i].agree);
    }
}

TEST_CASE("Lichnerowicz-type identities on flat tori") {
    const auto c2 = find_chart("flat_torus_2");
    for (const char* vname : {"gradsinx", "siny", "divfree"}) {
        const SuiteResult r = check_lichnerowicz(2, vector_poly(c2->vfield(vname), 2), vname, 1.0, 16, 2, 4, 1e-6);
        CAPTURE(vname);
        CHECK(r.pass());
    }
    const auto c3 = find_chart("flat_torus_3");
    CHECK(check_lichnerowicz(3, vector_poly(c3->vfield("siny"), 3), "siny", 0.7, 5, 1, 4, 1e-6).pass());
}
