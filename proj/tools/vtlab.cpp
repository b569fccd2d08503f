// vtlab command-line entry point: catalog, verify, spectrum.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "vtlab/catalog.hpp"
#include "vtlab/identities.hpp"
#include "vtlab/report.hpp"
#include "vtlab/torus.hpp"

using namespace vtlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_atomic(path, content);
}

std::uint64_t default_seed() {
    const char* env = std::getenv("VTLAB_SEED");
    if (!env || !*env) return RunOptions{}.seed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(ErrorKind::Config, std::string("VTLAB_SEED is not an integer: ") + env);
    return v;
}

bool has_wildcard(const std::string& s) { return s.find_first_of("*?") != std::string::npos; }

std::vector<ChartPtr> charts_or_fail(const std::string& pattern) {
    std::vector<ChartPtr> out = select_charts(pattern);
    if (out.empty()) {
        if (has_wildcard(pattern))
            throw Error(ErrorKind::UnknownId, "no chart matches '" + pattern + "'");
        throw Error(ErrorKind::UnknownId, "unknown chart id '" + pattern + "'");
    }
    return out;
}

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::Config, std::string(what) + " expects a,b");
    try {
        size_t p1 = 0, p2 = 0;
        const double a = std::stod(s.substr(0, comma), &p1);
        const double b = std::stod(s.substr(comma + 1), &p2);
        if (p1 != comma || p2 != s.size() - comma - 1) throw std::invalid_argument(s);
        return {a, b};
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Config, std::string(what) + " expects two numbers, got '" + s + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vtlab: verification engine for metric connections with vectorial torsion"};
    app.require_subcommand(1);

    // catalog
    auto* cat = app.add_subcommand("catalog", "list catalog charts");
    std::string cat_only = "*", cat_format = "text", cat_out;
    cat->add_option("--only", cat_only, "id or glob");
    cat->add_option("--format", cat_format, "json, csv or text");
    cat->add_option("--out", cat_out, "output path (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "run identity suites");
    std::vector<std::string> suites;
    std::string chart_glob = "*", vname, out_path, format = "json";
    double tol = 0.0;
    std::uint64_t seed = 0;
    int samples = RunOptions{}.samples, K = RunOptions{}.K, m = RunOptions{}.m;
    bool serial = false;
    ver->add_option("--suite", suites, "suite name (repeatable; default all)");
    ver->add_option("--chart", chart_glob, "chart id or glob");
    ver->add_option("--v", vname, "field name (vector field, scalar, spinor or potential)");
    auto* tol_opt = ver->add_option("--tol", tol, "override every pass threshold");
    auto* seed_opt = ver->add_option("--seed", seed, "random seed (default VTLAB_SEED)");
    ver->add_option("--samples", samples, "sample points per job");
    ver->add_option("--k", K, "Fourier cutoff for torus suites");
    ver->add_option("-m", m, "eigenvalue count for isospectral comparisons");
    ver->add_option("--out", out_path, "output path (default stdout)");
    ver->add_option("--format", format, "json, csv or text");
    ver->add_flag("--serial", serial, "run jobs on one thread");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "Dirac spectra on the flat 2-torus");
    std::string sp_chart = "flat_torus_2", sp_spin = "0,0", v_const, v_grad, sp_out;
    double t = 1.0;
    int sp_K = 16, sp_m = 50, grid = 5;
    bool compare = false, detect = false;
    spec->add_option("--chart", sp_chart, "must be flat_torus_2");
    spec->add_option("--spin", sp_spin, "spin structure e1,e2");
    auto* vc_opt = spec->add_option("--v-const", v_const, "constant V as v1,v2");
    auto* vg_opt = spec->add_option("--v-grad", v_grad, "registered potential f, V = grad f");
    vc_opt->excludes(vg_opt);
    spec->add_option("--t", t, "connection parameter");
    spec->add_option("--k", sp_K, "Fourier cutoff");
    spec->add_option("-m", sp_m, "number of eigenvalues");
    spec->add_flag("--compare-riemannian", compare, "pair with the V = 0 spectrum");
    spec->add_flag("--detect-parallel", detect, "parallel spinor table instead of a spectrum");
    spec->add_option("--grid", grid, "grid size g: v1, v2 in {0, pi, ..., (g-1) pi}");
    spec->add_option("--out", sp_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (cat->parsed()) {
            emit(cat_out, catalog_report(charts_or_fail(cat_only), parse_format(cat_format)));
            return 0;
        }

        if (ver->parsed()) {
            const Format f = parse_format(format);
            RunOptions opt;
            opt.seed = *seed_opt ? seed : default_seed();
            opt.samples = samples;
            opt.K = K;
            opt.m = m;
            if (*tol_opt) {
                if (!(tol > 0.0)) throw Error(ErrorKind::Config, "--tol must be positive");
                opt.tol = tol;
            }
            if (K < 8) throw Error(ErrorKind::Config, "--k must be at least 8");
            if (samples < 1 || m < 1) throw Error(ErrorKind::Config, "--samples and -m must be positive");
            if (suites.empty()) suites = suite_names();
            for (const auto& s : suites)
                if (!is_suite(s)) throw Error(ErrorKind::Config, "unknown suite '" + s + "'");
            const std::vector<ChartPtr> charts = charts_or_fail(chart_glob);
            const bool explicit_charts = chart_glob != "*";
            std::optional<std::string> field;
            if (!vname.empty()) field = vname;

            std::vector<SuiteResult> all;
            for (const auto& s : suites) {
                auto rs = run_suite(s, charts, explicit_charts, field, opt,
                                    serial ? Exec::Serial : Exec::Parallel);
                all.insert(all.end(), rs.begin(), rs.end());
            }
            emit(out_path, verify_report(all, f));
            for (const auto& r : all)
                if (!r.pass()) return kExitFail;
            return 0;
        }

        if (spec->parsed()) {
            const ChartPtr c = charts_or_fail(sp_chart).front();
            if (c->id != "flat_torus_2")
                throw Error(ErrorKind::UnsupportedChart, "spectra are computed on flat_torus_2 only");
            if (sp_K < 8) throw Error(ErrorKind::Config, "--k must be at least 8");
            if (detect) {
                if (grid < 1) throw Error(ErrorKind::Config, "--grid must be positive");
                emit(sp_out, parallel_table(parallel_grid(grid, Exec::Parallel)).dump(2) + "\n");
                return 0;
            }
            const auto [e1, e2] = parse_pair(sp_spin, "--spin");
            if ((e1 != 0 && e1 != 1) || (e2 != 0 && e2 != 1))
                throw Error(ErrorKind::Config, "--spin entries must be 0 or 1");
            const SpinStructure spin{static_cast<int>(e1), static_cast<int>(e2)};
            std::array<TrigPoly, kMaxDim> v;
            for (auto& p : v) p = TrigPoly{2, {}};
            if (!v_grad.empty()) {
                const TrigPoly f = trig_poly(find_potential(v_grad).f, 2);
                if (compare) {
                    if (t != 1.0) throw Error(ErrorKind::Config, "--compare-riemannian uses t = 1");
                    emit(sp_out, spectrum_csv(compare_isospectral(spin, f, v_grad, sp_K, sp_m)));
                    return 0;
                }
                v[0] = f.derivative(0);
                v[1] = f.derivative(1);
            } else if (!v_const.empty()) {
                const auto [a, b] = parse_pair(v_const, "--v-const");
                v[0] = constant_poly(2, a);
                v[1] = constant_poly(2, b);
            }
            if (compare)
                throw Error(ErrorKind::Config, "--compare-riemannian needs --v-grad (exact V)");
            emit(sp_out, spectrum_csv(spectrum(build_dirac(spin, v, t, sp_K), sp_m)));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "vtlab: " << e.what() << "\n";
        return e.kind() == ErrorKind::SolverFailure ? kExitFail : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "vtlab: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
