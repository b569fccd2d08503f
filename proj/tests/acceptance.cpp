// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>

#include "vtlab/identities.hpp"
#include "vtlab/report.hpp"
#include "vtlab/spin.hpp"
#include "vtlab/torus.hpp"
#include "vtlab/warped.hpp"

using namespace vtlab;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail, double seconds) {
    std::printf("%s  %2d  %-34s %s  [%.1fs]\n", ok ? "PASS" : "FAIL", id, title, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

struct Tally {
    int jobs = 0, failed = 0, skipped = 0;
    double worst = 0.0;
    std::set<std::string> charts;
};

Tally tally(const std::vector<SuiteResult>& rs) {
    Tally t;
    for (const auto& r : rs) {
        if (r.skipped) {
            ++t.skipped;
            continue;
        }
        ++t.jobs;
        t.charts.insert(r.chart);
        if (!r.pass()) ++t.failed;
        t.worst = std::max(t.worst, r.residual_max());
    }
    return t;
}

const Check* find_check(const SuiteResult& r, const std::string& name) {
    for (const Check& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

template <typename F>
void criterion(int id, const char* title, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("error: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, title, ok, detail, s);
}

std::vector<SuiteResult> run(const std::string& suite, const std::string& glob, RunOptions opt = {}) {
    return run_suite(suite, select_charts(glob), false, std::nullopt, opt, Exec::Parallel);
}

}  // namespace

int main() {
    RunOptions ten;
    ten.samples = 10;

    criterion(1, "dual-path curvature", [&](std::string& d) {
        const auto rs = run("dual_path", "*", ten);
        const Tally t = tally(rs);
        std::map<std::string, int> fields;
        bool mixed = false;
        for (const auto& r : rs) {
            if (r.skipped) continue;
            ++fields[r.chart];
            for (const Check& c : r.checks) mixed = mixed || (c.name.find('+') != std::string::npos && c.pass());
        }
        int wide = 0;
        for (const auto& [c, k] : fields) wide += k >= 3;
        d = fmt("%zu charts (%d with >=3 fields), %d jobs x 10 pts, max %.2e, skew-form case %s", t.charts.size(),
                wide, t.jobs, t.worst, mixed ? "yes" : "no");
        return t.failed == 0 && wide >= 10 && mixed && t.worst <= 1e-9;
    });

    criterion(2, "Weyl decomposition", [&](std::string& d) {
        const auto rs = run("weyl_decomposition", "*", ten);
        const Tally t = tally(rs);
        bool closed = false, open = false, n3 = false, n4 = false;
        for (const auto& r : rs) {
            if (r.skipped) continue;
            const int n = find_chart(r.chart)->dim;
            n3 = n3 || n == 3;
            n4 = n4 || n == 4;
            closed = closed || r.vfield == "gradsinx" || r.vfield == "dt";
            open = open || r.vfield == "siny" || r.vfield == "swirl";
        }
        d = fmt("%d jobs on n=3,4, max %.2e, closed and non-closed V %s", t.jobs, t.worst,
                closed && open ? "yes" : "no");
        return t.failed == 0 && closed && open && n3 && n4 && t.worst <= 1e-9;
    });

    criterion(3, "symmetry equivalence", [&](std::string& d) {
        const auto rs = run("symmetry_equiv", "*", ten);
        const Tally t = tally(rs);
        double sep = 0;
        for (const auto& r : rs)
            if (const Check* c = find_check(r, "pair_symmetry_separation")) sep = std::max(sep, c->value);
        d = fmt("%d jobs, residual max %.2e, non-closed pair defect %.3e", t.jobs, t.worst, sep);
        return t.failed == 0 && t.worst <= 1e-9 && sep >= 1e-4;
    });

    criterion(4, "conformal equivalence", [&](std::string& d) {
        const std::pair<const char*, const char*> cases[] = {
            {"flat_torus_2", "f_sin"}, {"euclidean_3", "gauss"}, {"hyperbolic_warped_3", "neg_log_warp"}};
        double worst = 0, trip = 0;
        bool ok = true;
        for (const auto& [c, f] : cases) {
            const SuiteResult r = check_conformal(*find_chart(c), f, 10, ten.seed, 1e-9);
            ok = ok && r.pass() && find_check(r, "round_trip") && find_check(r, "scalar");
            worst = std::max(worst, r.residual_max());
            if (const Check* k = find_check(r, "round_trip")) trip = std::max(trip, k->value);
        }
        d = fmt("3 (chart, f) pairs, max %.2e, round trip %.2e", worst, trip);
        return ok && worst <= 1e-9;
    });

    criterion(5, "hyperbolic flatness", [&](std::string& d) {
        double rv = 0, ric = 0;
        bool ok = true;
        for (int n = 2; n <= 4; ++n) {
            const SuiteResult r = check_hyperbolic_flat(*find_chart("hyperbolic_warped_" + std::to_string(n)), 10,
                                                        ten.seed, 1e-9);
            ok = ok && r.pass();
            rv = std::max(rv, find_check(r, "rv_zero")->value);
            ric = std::max(ric, find_check(r, "ricci_closed_form")->value);
        }
        d = fmt("n=2,3,4: |R^V| %.2e, Ric vs -(n-1)g %.2e", rv, ric);
        return ok && rv <= 1e-10 && ric <= 1e-9;
    });

    criterion(6, "warped canonical V", [&](std::string& d) {
        double eq = 0, sep = 1e300;
        bool ok = true, pos = false, neg = false;
        for (const char* id : {"warped:s2:cosh:+1", "warped:flat2:t:-1", "warped_s3_lorentz"}) {
            const auto c = find_chart(id);
            const SuiteResult r = check_canonical_V(*c->warp, 10, ten.seed, 1e-9);
            ok = ok && r.pass();
            (c->warp->eps > 0 ? pos : neg) = true;
            eq = std::max(eq, find_check(r, "canonical")->value);
            sep = std::min(sep, find_check(r, "perturbed_separation")->value);
        }
        d = fmt("eps=+1 and -1, S^3+omega Lorentzian included: equality %.2e, perturbed >= %.3e", eq, sep);
        return ok && pos && neg && eq <= 1e-9 && sep >= 1e-4;
    });

    criterion(7, "spinorial Ricci identity", [&](std::string& d) {
        const auto rs = run("ric_spinor", "*", ten);
        const Tally t = tally(rs);
        std::set<int> dims;
        for (const auto& r : rs)
            if (!r.skipped) dims.insert(find_chart(r.chart)->dim);
        const auto w = find_chart("euclidean_4");
        double abl = 0;
        for (const Point& x : sample_points(*w, 10, ten.seed))
            abl = std::max(abl, ric_spinor_residual(*w, x, w->vfield("siny"), random_spinor(4, 5), 0.0));
        d = fmt("%d jobs on n=%s, max %.2e, ablation on euclidean_4 %.3e", t.jobs,
                dims.size() == 3 ? "2,3,4" : "?", t.worst, abl);
        return t.failed == 0 && dims.size() == 3 && t.worst <= 1e-9 && abl >= 1e-3;
    });

    criterion(8, "Lichnerowicz formulas", [&](std::string& d) {
        const auto rs = run("lichnerowicz", "flat_torus_2");
        const Tally t = tally(rs);
        std::set<std::string> fields;
        double resc = 0;
        for (const auto& r : rs) {
            fields.insert(r.vfield);
            if (const Check* c = find_check(r, "rescaling_n2")) resc = std::max(resc, c->value);
        }
        const bool cover = fields.count("zero") && fields.count("const") && fields.count("gradsinx") &&
                           fields.count("siny");
        d = fmt("T^2, K=16, %d fields, max %.2e, n=2 rescaling %.2e", t.jobs, t.worst, resc);
        return t.failed == 0 && cover && t.worst <= 1e-6 && resc <= 1e-10;
    });

    criterion(9, "isospectrality for V = grad f", [&](std::string& d) {
        RunOptions o;
        o.K = 16;
        o.m = 50;
        const auto rs = run("isospectral", "flat_torus_2", o);
        const Tally t = tally(rs);
        int checks = 0;
        for (const auto& r : rs) checks += static_cast<int>(r.checks.size());
        d = fmt("%d potentials x 4 spin structures, 50 eigenvalues, max distance %.2e", t.jobs, t.worst);
        return t.failed == 0 && t.jobs == 3 && checks == 12 && t.worst <= 1e-6;
    });

    criterion(10, "parallel spinor grid", [&](std::string& d) {
        const auto cells = parallel_grid(5, Exec::Parallel);
        int agree = 0, displayed = 0;
        for (const auto& c : cells) {
            agree += c.agree && c.oracle_dim == c.pointwise_dim;
            displayed += c.displayed_agree;
        }
        std::ofstream("parallel_grid_table.json") << parallel_table(cells).dump(2) << "\n";
        d = fmt("oracle = pointwise = kernel in %d/%zu cells; displayed condition disagrees in %d (flagged, "
                "table in parallel_grid_table.json)",
                agree, cells.size(), static_cast<int>(cells.size()) - displayed);
        return cells.size() == 100 && agree == 100;
    });

    criterion(11, "parallel spinor consequences", [&](std::string& d) {
        const auto rs = run("parallel_spinor", "*", ten);
        const Tally t = tally(rs);
        d = fmt("%d examples (%s), max %.2e", t.jobs, [&] {
            std::string s;
            for (const auto& c : t.charts) s += (s.empty() ? "" : ", ") + c;
            return s;
        }().c_str(), t.worst);
        return t.failed == 0 && t.jobs == 3;
    });

    criterion(12, "integral identities", [&](std::string& d) {
        const auto rs = run("integral_identities", "flat_torus_*");
        const Tally t = tally(rs);
        double s = 0, vv = 0;
        int scalars = 0, divfree = 0;
        for (const auto& r : rs) {
            if (const Check* c = find_check(r, "total_scalar"); c && r.chart == "flat_torus_2") {
                s = std::max(s, c->value);
                ++scalars;
            }
            if (const Check* c = find_check(r, "ricci_vv")) {
                vv = std::max(vv, c->value);
                divfree += r.vfield == "divfree";
            }
        }
        // the Ric(V,V) integrand itself is far from zero on T^3
        const auto t3 = find_chart("flat_torus_3");
        const VectorFn v = t3->vfield("divfree");
        double pointwise = 0;
        for (const Point& x : sample_points(*t3, 10, ten.seed)) {
            const PointData pd = point_data(*t3, x);
            const Tensor2 a = ricci(pd, TorsionSpec::vectorial(v)), b = ricci(pd, TorsionSpec::none());
            const Vec<double> vx = primal(v(seed_point(x)));
            double q = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) q += (a.c[i][j] - b.c[i][j]) * vx[i] * vx[j];
            pointwise = std::max(pointwise, std::abs(q));
        }
        d = fmt("T^2: |int s^V| %.2e over %d fields; div-free V on T^2, T^3: Ric(V,V) defect %.2e "
                "(integrand up to %.2f)",
                s, scalars, vv, pointwise);
        return t.failed == 0 && scalars >= 3 && divfree >= 2 && s <= 1e-8 && vv <= 1e-8;
    });

    criterion(13, "torsion decomposition", [&](std::string& d) {
        bool ok = true;
        std::string ranks;
        for (int n = 3; n <= 4; ++n) {
            const TorsionAudit a = audit_torsion_decomposition(n, Signature{1, 1, 1, 1}, n * n * (n - 1) / 2 + 4, 7);
            const int want_rest = n * (n - 2) * (n + 2) / 3;
            ok = ok && a.rank_vectorial == n && a.rank_skew == n * (n - 1) * (n - 2) / 6 &&
                 a.rank_rest == want_rest && a.rank_vectorial + a.rank_skew + a.rank_rest == a.total &&
                 a.idempotence <= 1e-12 && a.orthogonality <= 1e-12 && a.reconstruction <= 1e-12;
            ranks += fmt("n=%d: %d+%d+%d=%d ", n, a.rank_vectorial, a.rank_skew, a.rank_rest, a.total);
        }
        const Tally t = tally(run("torsion_decomposition", "*"));
        d = ranks + fmt("suite %d charts, max %.1e", t.jobs, t.worst);
        return ok && t.failed == 0;
    });

    std::printf("%s: %d of 13 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
