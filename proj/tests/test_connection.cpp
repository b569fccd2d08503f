#include <doctest.h>

#include "oracle.hpp"
#include "vtlab/catalog.hpp"
#include "vtlab/connection.hpp"
#include "vtlab/warped.hpp"

using namespace vtlab;

namespace {

Vec<double> field_value(const VectorFn& v, const Point& x) { return primal(v(seed_point(x))); }

// (1/sqrt|g|) d_i (sqrt|g| V^i) by finite differences.
double divergence_fd(const Chart& c, const VectorFn& v, const Point& x) {
    auto vol = [&](const Point& p) { return std::sqrt(std::abs(determinant(oracle::metric_value(c, p), c.dim))); };
    double s = 0;
    for (int i = 0; i < c.dim; ++i)
        s += oracle::fd([&](const Point& p) { return vol(p) * field_value(v, p)[i]; }, x, i);
    return s / vol(x);
}

using Ode = std::array<double, 4>;

Ode geodesic_rhs(const Chart& c, const Ode& s) {
    const ConnCoeffs cc = christoffel(c, Point{s[0], s[1], 0, 0});
    Ode d{s[2], s[3], 0, 0};
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) d[2 + k] -= cc.c[k][i][j].v * s[2 + i] * s[2 + j];
    return d;
}

}  // namespace

TEST_CASE("Christoffel symbols agree with a finite-difference oracle") {
    for (const auto& c : catalog()) {
        CAPTURE(c->id);
        for (const Point& x : sample_points(*c, 3, 21)) {
            const ConnCoeffs cc = christoffel(*c, x);
            const auto ref = oracle::christoffel_fd(*c, x);
            for (int k = 0; k < c->dim; ++k)
                for (int i = 0; i < c->dim; ++i)
                    for (int j = 0; j < c->dim; ++j) CHECK(oracle::rel(cc.c[k][i][j].v, ref[k][i][j]) < 1e-7);
        }
    }
}

TEST_CASE("Christoffel symbols of the hyperbolic plane dt^2 + e^{2t} dy^2") {
    const auto c = find_chart("hyperbolic_warped_2");
    for (const Point& x : sample_points(*c, 5, 2)) {
        const ConnCoeffs cc = christoffel(*c, x);
        CHECK(cc.c[0][1][1].v == doctest::Approx(-std::exp(2 * x[0])));
        CHECK(cc.c[1][0][1].v == doctest::Approx(1.0));
        CHECK(cc.c[1][1][0].v == doctest::Approx(1.0));
        CHECK(cc.c[0][0][0].v == 0.0);
        CHECK(cc.c[1][1][1].v == doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("RK4 geodesics of the polar chart are straight lines") {
    const auto c = find_chart("polar_plane");
    // start at cartesian (1, 0) heading in +y with unit speed
    Ode s{1.0, 0.0, 0.0, 1.0};
    const double h = 1e-3;
    for (int step = 0; step < 1000; ++step) {
        const Ode k1 = geodesic_rhs(*c, s);
        Ode tmp;
        for (int i = 0; i < 4; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
        const Ode k2 = geodesic_rhs(*c, tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
        const Ode k3 = geodesic_rhs(*c, tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = s[i] + h * k3[i];
        const Ode k4 = geodesic_rhs(*c, tmp);
        for (int i = 0; i < 4; ++i) s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    CHECK(s[0] * std::cos(s[1]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s[0] * std::sin(s[1]) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("the vectorial difference tensor") {
    Mat<double> g = zero_mat<double>();
    g[0][0] = 2.0;
    g[1][1] = 0.5;
    g[2][2] = 1.0;
    g[0][1] = g[1][0] = 0.25;
    const Vec<double> v{0.4, -1.0, 0.3, 0};
    const Arr3<double> a = vectorial_A(g, v, 3);  // component k of A_V(d_i) d_j
    auto apply = [&](const Vec<double>& x, const Vec<double>& y) {
        Vec<double> r{};
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) r[k] += a[k][i][j] * x[i] * y[j];
        return r;
    };
    auto dot = [&](const Vec<double>& x, const Vec<double>& y) {
        double s = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += g[i][j] * x[i] * y[j];
        return s;
    };
    for (int k = 0; k < 3; ++k) CHECK(apply(v, v)[k] == doctest::Approx(0.0).scale(1.0));
    // unit X orthogonal to V: A_V(X) X = V
    Vec<double> x{1.0, 0.0, 0.0, 0};
    const double c = dot(x, v) / dot(v, v);
    for (int i = 0; i < 3; ++i) x[i] -= c * v[i];
    const double nx = std::sqrt(dot(x, x));
    for (int i = 0; i < 3; ++i) x[i] /= nx;
    for (int k = 0; k < 3; ++k) CHECK(apply(x, x)[k] == doctest::Approx(v[k]));
    // skew: g(A(X)Y, Z) = -g(A(X)Z, Y)
    const Vec<double> y{0.1, 0.7, -0.2, 0}, z{-0.6, 0.2, 0.9, 0};
    CHECK(dot(apply(x, y), z) == doctest::Approx(-dot(apply(x, z), y)));
}

TEST_CASE("vectorial connections are metric with torsion T_V") {
    for (const char* id : {"s2_polar", "s3_stereo", "hyperbolic_warped_4", "warped_s3_lorentz", "minkowski_2"}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        const VectorFn v = random_vfield(*c, 5);
        for (const Point& x : sample_points(*c, 3, 13)) {
            const PointData pd = point_data(*c, x);
            const ConnCoeffs cc = connection_coeffs(pd, TorsionSpec::vectorial(v));
            const int n = c->dim;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double r = pd.g[j][k].d[i];
                        for (int l = 0; l < n; ++l)
                            r -= cc.c[l][i][j].v * pd.g[l][k].v + cc.c[l][i][k].v * pd.g[j][l].v;
                        CHECK(std::abs(r) < 1e-10);
                    }
            Mat<double> g = value_part(pd.g);
            const Vec<double> vv = field_value(v, x);
            Vec<double> vl{};
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) vl[i] += g[i][j] * vv[j];
            const Arr3<double> t = torsion_lowered(cc, g);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        CHECK(t[i][j][k] == doctest::Approx(vl[i] * g[j][k] - vl[j] * g[i][k]).scale(1.0));
        }
    }
}

TEST_CASE("curvature of flat charts vanishes and the two curvature paths agree") {
    for (const char* id : {"euclidean_3", "polar_plane", "flat_torus_4", "const_metric_3"}) {
        const auto c = find_chart(id);
        for (const Point& x : sample_points(*c, 3, 1)) CHECK(max_abs(curvature_direct(*c, x, TorsionSpec::none())) < 1e-10);
    }
    for (const char* id : {"s2_graph", "r_x_s2", "warped:flat2:t:-1", "hyperbolic_warped_3"}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        const VectorFn v = random_vfield(*c, 17);
        for (const Point& x : sample_points(*c, 3, 4)) {
            const Tensor4 a = curvature_direct(*c, x, TorsionSpec::vectorial(v));
            const Tensor4 b = curvature_via_lemma(*c, x, v, TorsionSpec::none());
            CHECK(normalized_diff(a, b) < 1e-9);
            CHECK(antisymmetry_defect(a) < 1e-9);
        }
    }
}

TEST_CASE("hyperbolic space with V = d_t is flat") {
    for (const char* id : {"hyperbolic_warped_2", "hyperbolic_warped_3", "hyperbolic_warped_4"}) {
        const auto c = find_chart(id);
        for (const Point& x : sample_points(*c, 4, 8))
            CHECK(max_abs(curvature_direct(*c, x, TorsionSpec::vectorial(c->vfield("dt")))) < 1e-10);
    }
}

TEST_CASE("scalar curvature on surfaces: s^V = s^g + 2 div V") {
    for (const char* id : {"s2_polar", "s2_stereo", "upper_halfplane", "euclidean_2", "flat_torus_2"}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        const VectorFn v = random_vfield(*c, 23);
        for (const Point& x : sample_points(*c, 4, 6)) {
            const RicciData rv = ricci_scalar_div(*c, x, TorsionSpec::vectorial(v));
            const RicciData rg = ricci_scalar_div(*c, x, TorsionSpec::none());
            const double div = divergence_fd(*c, v, x);
            CHECK(oracle::rel(rv.div_v, div) < 1e-7);
            CHECK(oracle::rel(rv.s, rg.s + 2 * div) < 1e-7);
        }
    }
}

TEST_CASE("exterior derivative of V flat") {
    const auto c = find_chart("flat_torus_2");
    for (const Point& x : sample_points(*c, 6, 3)) {
        const DvFlat d = dv_flat(*c, x, c->vfield("siny"));
        const double want = -2 * kPi * std::cos(2 * kPi * x[1]);
        CHECK(d.partials(0, 1) == doctest::Approx(want));
        CHECK(d.levi_civita(0, 1) == doctest::Approx(want));
        CHECK(d.vectorial(0, 1) == doctest::Approx(want));
        CHECK(max_abs(dv_flat(*c, x, c->vfield("gradsinx")).partials) < 1e-12);
    }
    // gradients are closed on a curved chart too
    const auto s2 = find_chart("s2_polar");
    const VectorFn grad = gradient_field(*s2, s2->scalar("cos_theta"), 1.0);
    for (const Point& x : sample_points(*s2, 4, 3)) CHECK(max_abs(dv_flat(*s2, x, grad).levi_civita) < 1e-10);
}
