#include <doctest.h>

#include <random>

#include "vtlab/catalog.hpp"
#include "vtlab/connection.hpp"
#include "vtlab/tensor.hpp"

using namespace vtlab;

namespace {

Tensor2 random_symmetric(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    Tensor2 t = zero_tensor2(n, Basis::Frame);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) t.c[i][j] = t.c[j][i] = u(rng);
    return t;
}

double bianchi_defect(const Tensor4& r) {
    double m = 0;
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j)
            for (int k = 0; k < r.n; ++k)
                for (int l = 0; l < r.n; ++l)
                    m = std::max(m, std::abs(r.c[i][j][k][l] + r.c[j][k][i][l] + r.c[k][i][j][l]));
    return m;
}

}  // namespace

TEST_CASE("g KN g in an orthonormal frame") {
    for (int n = 2; n <= 4; ++n)
        for (int lor = 0; lor <= 1; ++lor) {
            Signature eps{1, 1, 1, 1};
            if (lor) eps[0] = -1;
            const Tensor2 g = frame_metric(n, eps);
            const Tensor4 r = kulkarni_nomizu(g, g);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            const double want =
                                2.0 * eps[i] * eps[j] * ((i == k && j == l) - (i == l && j == k));
                            CHECK(r.c[i][j][k][l] == want);
                        }
        }
}

TEST_CASE("KN of symmetric tensors is an algebraic curvature tensor") {
    for (int n = 2; n <= 4; ++n) {
        const Tensor2 h = random_symmetric(n, 10 + n), k = random_symmetric(n, 20 + n);
        const Tensor4 r = kulkarni_nomizu(h, k);
        CHECK(antisymmetry_defect(r) < 1e-15);
        CHECK(pair_symmetry_defect(r) < 1e-15);
        CHECK(bianchi_defect(r) < 1e-15);
        CHECK(normalized_diff(r, kulkarni_nomizu(k, h)) < 1e-15);
        CHECK(max_abs(kulkarni_nomizu(h, zero_tensor2(n, Basis::Frame))) == 0.0);
    }
    Tensor2 a = zero_tensor2(3, Basis::Frame), b = zero_tensor2(3, Basis::Coordinate);
    CHECK_THROWS_AS(kulkarni_nomizu(a, b), Error);
}

TEST_CASE("round sphere and hyperbolic space have constant curvature of the right sign") {
    // With R(e_i,e_j,e_k,e_l) = g(R(e_i,e_j)e_k, e_l), curvature K means R = -K/2 g KN g.
    for (const auto& [id, K] : {std::pair{"s2_polar", 1.0}, {"s2_stereo", 1.0}, {"s3_stereo", 1.0},
                                {"hyperbolic_warped_3", -1.0}, {"hyperbolic_warped_4", -1.0}}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        for (const Point& x : sample_points(*c, 3, 5)) {
            const Tensor4 r = curvature_direct(*c, x, TorsionSpec::none());
            const Signature eps = orthonormal_frame(*c, x).eps;
            const Tensor2 g = frame_metric(c->dim, eps);
            CHECK(normalized_diff(r, (-0.5 * K) * kulkarni_nomizu(g, g)) < 1e-10);
            const Tensor2 ric = ricci_contract(r, eps);
            CHECK(normalized_diff(ric, (K * (c->dim - 1)) * g) < 1e-10);
            CHECK(scalar_contract(ric, eps) == doctest::Approx(K * c->dim * (c->dim - 1)));
        }
    }
}

TEST_CASE("vectorial torsion is recovered by the decomposition") {
    for (int n = 2; n <= 4; ++n) {
        Signature eps{1, 1, 1, 1};
        Vec<double> v{0.3, -1.2, 0.7, 2.0};
        for (int a = n; a < kMaxDim; ++a) v[a] = 0;
        const TorsionTensor t = vectorial_torsion(v, n, eps);
        // T_V(e_a, e_b, e_c) = V_a delta_bc - V_b delta_ac
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    CHECK(t(a, b, c) == doctest::Approx(v[a] * (b == c) - v[b] * (a == c)));
        const TorsionParts p = torsion_decompose(t, eps);
        for (int a = 0; a < n; ++a) CHECK(p.v[a] == doctest::Approx(v[a]));
        CHECK(max_abs(p.skew) < 1e-15);
        CHECK(max_abs(p.rest) < 1e-15);
    }
}

TEST_CASE("a 3-form torsion is purely skew") {
    Form3 w;
    w.n = 3;
    w.set(0, 1, 2, 1.5);
    const TorsionParts p = torsion_decompose(torsion_from_form(w), Signature{1, 1, 1, 1});
    CHECK(p.s(0, 1, 2) == doctest::Approx(1.5));
    CHECK(p.s(2, 1, 0) == doctest::Approx(-1.5));
    CHECK(max_abs(p.vectorial) < 1e-15);
    CHECK(max_abs(p.rest) < 1e-15);
}

TEST_CASE("torsion decomposition of random tensors is orthogonal and complete") {
    for (int n = 3; n <= 4; ++n)
        for (int lor = 0; lor <= 1; ++lor) {
            Signature eps{1, 1, 1, 1};
            if (lor) eps[0] = -1;
            for (std::uint64_t s = 0; s < 5; ++s) {
                const TorsionTensor t = random_torsion(n, 100 + s);
                const TorsionParts p = torsion_decompose(t, eps);
                CHECK(max_abs(t - p.vectorial - p.skew - p.rest) < 1e-14);
                CHECK(std::abs(torsion_inner(p.vectorial, p.skew, eps)) < 1e-12);
                CHECK(std::abs(torsion_inner(p.vectorial, p.rest, eps)) < 1e-12);
                CHECK(std::abs(torsion_inner(p.skew, p.rest, eps)) < 1e-12);
                const TorsionParts q = torsion_decompose(p.rest, eps);
                CHECK(max_abs(q.vectorial) < 1e-13);
                CHECK(max_abs(q.skew) < 1e-13);
            }
        }
}

TEST_CASE("dimension audit of the torsion decomposition") {
    const Signature eps{1, 1, 1, 1};
    const TorsionAudit a3 = audit_torsion_decomposition(3, eps, 13, 1);
    CHECK(a3.total == 9);
    CHECK(a3.rank_vectorial == 3);
    CHECK(a3.rank_skew == 1);
    CHECK(a3.rank_rest == 5);
    // ranks are those of the sampled span, so too few draws undercount
    CHECK(audit_torsion_decomposition(4, eps, 10, 1).rank_rest < 16);
    const TorsionAudit a4 = audit_torsion_decomposition(4, Signature{-1, 1, 1, 1}, 28, 1);
    CHECK(a4.total == 24);
    CHECK(a4.rank_vectorial == 4);
    CHECK(a4.rank_skew == 4);
    CHECK(a4.rank_rest == 16);
}

TEST_CASE("pair symmetry separates closed from non-closed V on the flat torus") {
    // n = 3: in two dimensions pair symmetry holds for every V
    const auto c = find_chart("flat_torus_3");
    for (const Point& x : sample_points(*c, 5, 9)) {
        const Tensor4 closed = curvature_direct(*c, x, TorsionSpec::vectorial(c->vfield("gradsinx")));
        CHECK(pair_symmetry_defect(closed) < 1e-10);
    }
    double worst = 0;
    for (const Point& x : sample_points(*c, 5, 9))
        worst = std::max(worst, pair_symmetry_defect(
                                    curvature_direct(*c, x, TorsionSpec::vectorial(c->vfield("siny")))));
    CHECK(worst > 1e-3);
}

TEST_CASE("form storage helpers") {
    Form2 f;
    f.n = 3;
    f.set(0, 2, 1.25);
    CHECK(f(2, 0) == -1.25);
    CHECK(f(1, 1) == 0.0);
    CHECK(pair_index(0, 1) != pair_index(0, 2));
    CHECK(triple_index(0, 1, 2) != triple_index(1, 2, 3));
}
