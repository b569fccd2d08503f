#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "vtlab/identities.hpp"
#include "vtlab/report.hpp"
#include "vtlab/warped.hpp"

using namespace vtlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Config;
}

}  // namespace

TEST_CASE("Schouten tensor needs n >= 3 and Weyl vanishes for conformally flat metrics") {
    const auto s2 = find_chart("s2_polar");
    CHECK(kind_of([&] { schouten_weyl(*s2, Point{1, 1}, VectorFn{}); }) == ErrorKind::DimensionTooSmall);
    for (const char* id : {"s3_stereo", "hyperbolic_warped_4", "r_x_s3", "euclidean_4"}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        for (const Point& x : sample_points(*c, 3, 8))
            CHECK(max_abs(schouten_weyl(*c, x, random_vfield(*c, 2)).weyl_g) < 1e-9);
    }
    // R x S^2 is not conformally flat, but in dimension three Weyl vanishes anyway
    const auto rs2 = find_chart("r_x_s2");
    for (const Point& x : sample_points(*rs2, 3, 8))
        CHECK(max_abs(schouten_weyl(*rs2, x, VectorFn{}).weyl_g) < 1e-9);
    // S^2 x R^2 is not: W(e_th, e_ph, e_ph, e_th) = 1/3 for the unit sphere
    Chart c;
    c.id = "s2_x_r2";
    c.dim = 4;
    c.metric = [](const Vec<Dual2>& x) {
        Mat<Dual2> g = zero_mat<Dual2>();
        const Dual2 s = sin(x[0]);
        g[0][0] = g[2][2] = g[3][3] = Dual2(1.0);
        g[1][1] = s * s;
        return g;
    };
    c.domain = {{0.5, 0, 0, 0}, {2.5, 1, 1, 1}};
    for (const Point& x : sample_points(c, 3, 8)) {
        const SchoutenWeyl sw = schouten_weyl(c, x, VectorFn{});
        CHECK(std::abs(sw.weyl_g.c[0][1][1][0]) == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("Schouten of the vectorial connection adds the KN of the V terms") {
    for (const char* id : {"s3_stereo", "flat_torus_4", "warped_s3_lorentz"}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        const SuiteResult r = check_weyl_decomposition(*c, "random", 4, 3, 1e-9);
        CHECK(r.pass());
    }
}

TEST_CASE("per-chart identity suites pass on representative charts") {
    for (const auto& [id, v] : {std::pair{"s2_stereo", "rotation"}, {"hyperbolic_warped_3", "t2"},
                                {"warped:flat2:t:-1", "perturbed"}, {"flat_torus_3", "siny"},
                                {"s3_stereo", "random"}}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        CHECK(check_dual_path(*c, v, 4, 1, 1e-9).pass());
        CHECK(check_bianchi(*c, v, 3, 1, 1e-9).pass());
        CHECK(check_symmetry_equivalence(*c, v, 4, 1, 1e-9).pass());
        CHECK(check_dv_flat(*c, v, 4, 1, 1e-10).pass());
    }
}

TEST_CASE("symmetry equivalence reports a separation floor for non-closed V") {
    const auto c = find_chart("flat_torus_3");
    const SuiteResult r = check_symmetry_equivalence(*c, "siny", 6, 1, 1e-9);
    bool saw_floor = false;
    for (const Check& k : r.checks)
        if (k.lower_bound) {
            saw_floor = true;
            CHECK(k.pass());
        }
    CHECK(saw_floor);
}

TEST_CASE("conformal change with V = -grad f") {
    for (const auto& [id, f] : {std::pair{"flat_torus_2", "f_sin"}, {"euclidean_3", "gauss"},
                                {"hyperbolic_warped_3", "neg_log_warp"}, {"upper_halfplane", "log_y"}}) {
        const auto c = find_chart(id);
        CAPTURE(id);
        CHECK(check_conformal(*c, f, 4, 2, 1e-9).pass());
    }
}

TEST_CASE("warped products: closed-form Ricci, canonical V and warp derivatives") {
    for (const auto& c : catalog()) {
        if (!c->warp) continue;
        CAPTURE(c->id);
        CHECK(check_warped_ricci(*c, 4, 3, 1e-9).pass());
        CHECK(check_canonical_V(*c->warp, 4, 3, 1e-9).pass());
        for (double t : {c->warp->t_lo + 0.1, 0.5 * (c->warp->t_lo + c->warp->t_hi), c->warp->t_hi - 0.1}) {
            const WarpJet j = warp_jet(c->warp->warp, t);
            const WarpJet jd = warp_jet(c->warp->warp_dot, t);
            auto f = [&](const Point& p) { return warp_jet(c->warp->warp, p[0]).f; };
            CHECK(oracle::rel(j.fd, oracle::fd(f, Point{t}, 0)) < 1e-8);
            CHECK(oracle::rel(j.fd, jd.f) < 1e-12);
            CHECK(oracle::rel(j.fdd, jd.fd) < 1e-12);
        }
    }
}

TEST_CASE("hyperbolic space with V = d_t") {
    for (const char* id : {"hyperbolic_warped_2", "hyperbolic_warped_3", "hyperbolic_warped_4"})
        CHECK(check_hyperbolic_flat(*find_chart(id), 4, 5, 1e-9).pass());
}

TEST_CASE("product metric with f = 1 is the product and the Ricci of R x S^2 is the fiber one") {
    const auto c = find_chart("warped:s2:cosh:+1");
    const WarpedSpec p = product_spec(*c->warp);
    const Chart prod = make_warped(p);
    for (const Point& x : sample_points(prod, 3, 4)) {
        const Tensor2 ric = ricci_coord(prod, x, TorsionSpec::none());
        const auto g = oracle::metric_value(prod, x);
        CHECK(std::abs(ric.c[0][0]) < 1e-10);
        for (int i = 1; i < 3; ++i)
            for (int j = 1; j < 3; ++j) CHECK(ric.c[i][j] == doctest::Approx(g[i][j]).scale(1.0));
    }
}

TEST_CASE("umbilic and example formulas") {
    CHECK(check_umbilic_ricci(*find_chart("warped:s2:cosh:+1"), "t2", 4, 3, 1e-8).pass());
    CHECK(check_umbilic_ricci(*find_chart("hyperbolic_warped_3"), "canonical", 4, 3, 1e-8).pass());
    CHECK(kind_of([] { check_umbilic_ricci(*find_chart("s2_polar"), "dphi", 3, 3, 1e-8); }) ==
          ErrorKind::UnsupportedChart);
    CHECK(kind_of([] { check_umbilic_ricci(*find_chart("warped_s3_lorentz"), "t2", 3, 3, 1e-8); }) ==
          ErrorKind::UnsupportedChart);
    CHECK(check_examples(*find_chart("flat_torus_3"), "const", 4, 3, 1e-9).pass());
    CHECK(check_examples(*find_chart("hyperbolic_warped_3"), "dt", 4, 3, 1e-9).pass());
    CHECK(check_examples(*find_chart("euclidean_3"), "radial", 4, 3, 1e-9).pass());
    CHECK(kind_of([] { check_examples(*find_chart("flat_torus_3"), "siny", 3, 3, 1e-9); }) ==
          ErrorKind::UnsupportedChart);
}

TEST_CASE("integral identities on flat tori") {
    const auto t2 = find_chart("flat_torus_2");
    for (const char* v : {"siny", "gradsinx", "divfree", "const"})
        CHECK(std::abs(integral_scalar(*t2, t2->vfield(v), quadrature_points(2))) < 1e-10);
    // |V|^2 of sin(2 pi y) d_x integrates to 1/2
    CHECK(integral_norm2(*t2, t2->vfield("siny"), 16) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kind_of([&] { integral_ricci_vv_defect(*t2, t2->vfield("gradsinx"), 32); }) ==
          ErrorKind::DivergenceNotZero);
    for (const char* id : {"flat_torus_2", "flat_torus_3", "flat_torus_4"}) {
        const auto c = find_chart(id);
        for (const auto& [name, fn] : c->vfields) {
            CAPTURE(id);
            CAPTURE(name);
            CHECK(check_integral_identities(*c, name, 1e-8).pass());
        }
        CHECK(integral_scalar(*c, c->vfield("siny"), quadrature_points(c->dim), Exec::Serial) ==
              integral_scalar(*c, c->vfield("siny"), quadrature_points(c->dim), Exec::Parallel));
    }
}

TEST_CASE("runner: applicability, skips and tolerance override") {
    RunOptions opt;
    opt.samples = 3;
    const auto charts = select_charts("euclidean_*");
    const auto silent = run_suite("weyl_decomposition", charts, false, std::nullopt, opt, Exec::Serial);
    for (const auto& r : silent) CHECK(r.chart != "euclidean_2");
    const auto loud = run_suite("weyl_decomposition", charts, true, std::nullopt, opt, Exec::Serial);
    int skipped = 0;
    for (const auto& r : loud)
        if (r.chart == "euclidean_2") {
            CHECK(r.skipped);
            CHECK(r.skip_reason.find("DimensionTooSmall") != std::string::npos);
            ++skipped;
        }
    CHECK(skipped > 0);

    opt.tol = 1e-30;
    bool any_fail = false;
    for (const auto& r : run_suite("dual_path", select_charts("s2_polar"), true, std::string("dphi"), opt, Exec::Serial))
        any_fail = any_fail || !r.pass();
    CHECK(any_fail);
    CHECK(is_suite("lichnerowicz"));
    CHECK_FALSE(is_suite("nope"));
    CHECK(suite_names().size() >= 19);
}

TEST_CASE("reports are deterministic across execution modes") {
    RunOptions opt;
    opt.samples = 2;
    const auto charts = select_charts("s*");
    std::vector<SuiteResult> a, b;
    for (const char* s : {"dual_path", "ric_spinor", "bianchi"}) {
        auto x = run_suite(s, charts, false, std::nullopt, opt, Exec::Serial);
        auto y = run_suite(s, charts, false, std::nullopt, opt, Exec::Parallel);
        a.insert(a.end(), x.begin(), x.end());
        b.insert(b.end(), y.begin(), y.end());
    }
    for (Format f : {Format::Json, Format::Csv, Format::Text}) CHECK(verify_report(a, f) == verify_report(b, f));
    const auto j = nlohmann::json::parse(verify_report(a, Format::Json));
    CHECK(j["summary"]["pass"] == true);
    CHECK(j["results"].size() == a.size());
    CHECK(verify_report(a, Format::Csv).rfind("suite,chart,vfield,check,kind,value,threshold,pass,skipped\n", 0) == 0);
    CHECK(kind_of([] { parse_format("xml"); }) == ErrorKind::Config);

    SuiteResult bad;
    bad.suite = "x";
    bad.add("boom", INFINITY, 1.0);
    const auto jb = to_json(bad);
    CHECK(jb["checks"][0]["value"].is_null());
    CHECK(jb["pass"] == false);
}

TEST_CASE("atomic writes leave no temporary files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "vtlab_atomic_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string path = (dir / "out.json").string();
    write_atomic(path, "first\n");
    write_atomic(path, "second\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second\n");
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file();
    CHECK(files == 1);
    CHECK(kind_of([&] { write_atomic((dir / "missing" / "x").string(), "y"); }) == ErrorKind::Config);
    fs::remove_all(dir);
}
