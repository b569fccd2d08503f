#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtlab/catalog.hpp"
#include "vtlab/connection.hpp"
#include "vtlab/parallel.hpp"
#include "vtlab/suite.hpp"

namespace vtlab {

struct SchoutenWeyl {
    Tensor4 schouten_g;  // C^g
    Tensor4 schouten_v;  // C^V
    Tensor4 weyl_g;      // W^g = R^g - C^g
};

// C = 1/(n-2) (s/(2(n-1)) g - Ric) KN g, orthonormal frame. n = 2 throws.
Tensor4 schouten(const Tensor2& ric, const Signature& eps, int n);
SchoutenWeyl schouten_weyl(const PointData& pd, const VectorFn& v);
SchoutenWeyl schouten_weyl(const Chart& chart, const Point& x, const VectorFn& v);

// Named vector field of the chart; "random" draws random_vfield(chart, seed).
VectorFn resolve_vfield(const Chart& chart, const std::string& name, std::uint64_t seed);

// Per-(chart, field) identity suites. Each samples `samples` points from the
// chart's box; `tol` is the pass threshold for residuals that are exact in
// exact arithmetic.
SuiteResult check_dual_path(const Chart& chart, const std::string& vname, int samples,
                            std::uint64_t seed, double tol);
SuiteResult check_weyl_decomposition(const Chart& chart, const std::string& vname, int samples,
                                     std::uint64_t seed, double tol);
SuiteResult check_bianchi(const Chart& chart, const std::string& vname, int samples,
                          std::uint64_t seed, double tol);
SuiteResult check_symmetry_equivalence(const Chart& chart, const std::string& vname,
                                       int samples, std::uint64_t seed, double tol);
SuiteResult check_dv_flat(const Chart& chart, const std::string& vname, int samples,
                          std::uint64_t seed, double tol);
// V = -grad f against the metric e^{2f} g, and the round trip f then -f.
SuiteResult check_conformal(const Chart& chart, const std::string& fname, int samples,
                            std::uint64_t seed, double tol);
// Hyperbolic warped charts with V = d_t.
SuiteResult check_hyperbolic_flat(const Chart& chart, int samples, std::uint64_t seed,
                                  double tol);
// Engine Ricci against the warped closed form.
SuiteResult check_warped_ricci(const Chart& chart, int samples, std::uint64_t seed, double tol);
// Riemannian warped chart, V = h(t) d_t; leaves t = const are umbilic.
SuiteResult check_umbilic_ricci(const Chart& chart, const std::string& vname, int samples,
                                std::uint64_t seed, double tol);
// Parallel, closed conformal and nabla-parallel V: the displayed curvature
// differences. Fields of none of these classes throw UnsupportedChart.
SuiteResult check_examples(const Chart& chart, const std::string& vname, int samples,
                           std::uint64_t seed, double tol);

// Periodic charts; trapezoid rule with m points per axis.
double integral_scalar(const Chart& chart, const VectorFn& v, int m, Exec mode = Exec::Serial);
double integral_norm2(const Chart& chart, const VectorFn& v, int m, Exec mode = Exec::Serial);
// int Ric^V(V,V) - int Ric^g(V,V); throws DivergenceNotZero unless div V = 0.
double integral_ricci_vv_defect(const Chart& chart, const VectorFn& v, int m,
                                Exec mode = Exec::Serial);
int quadrature_points(int dim);
SuiteResult check_integral_identities(const Chart& chart, const std::string& vname, double tol,
                                      Exec mode = Exec::Serial);

SuiteResult check_torsion_decomposition(const Chart& chart, int samples, std::uint64_t seed,
                                        double tol);
SuiteResult check_killing(const Chart& chart, const std::string& vname, int samples,
                          std::uint64_t seed);

// Suite runner.

struct RunOptions {
    int samples = 10;
    std::uint64_t seed = 20240917;
    std::optional<double> tol;  // overrides every default pass threshold
    int K = 16;
    int m = 50;
};

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

// Runs one suite over the given charts. With `explicit_charts` false, charts
// the suite does not apply to are left out silently; otherwise they are
// reported as skipped. `vname` restricts to one field name.
std::vector<SuiteResult> run_suite(const std::string& suite, const std::vector<ChartPtr>& charts,
                                   bool explicit_charts, const std::optional<std::string>& vname,
                                   const RunOptions& opt, Exec mode = Exec::Parallel);

}  // namespace vtlab
