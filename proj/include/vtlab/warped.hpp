#pragma once

#include <memory>

#include "vtlab/chart.hpp"
#include "vtlab/connection.hpp"
#include "vtlab/suite.hpp"

namespace vtlab {

using WarpedSpec = WarpInfo;

// Coordinates (t, fiber coordinates), signature (eps, +1, ...).
// Vector fields: "dt", "minus_dt", "canonical" (eps f'/f dt), "perturbed"
// (canonical + 0.1 dt), "t2" (t^2 dt). Scalars: "warp", "neg_log_warp".
// Form "omega" when the fiber carries one.
Chart make_warped(const WarpedSpec& spec);

std::string warped_id(const WarpedSpec& spec);

// The spec with f = 1 (product metric eps dt^2 + g_F).
WarpedSpec product_spec(const WarpedSpec& spec);
WarpedSpec spec_of(const Chart& warped);

struct WarpJet {
    double f = 0.0, fd = 0.0, fdd = 0.0;
};
WarpJet warp_jet(const WarpFn& warp, double t);

// Coordinate basis. Fiber Ricci includes the fiber 3-form when present.
Tensor2 ricci_warped_closed_form(const WarpedSpec& spec, const Point& x);

// Frame tensor expressed in coordinates: T_ij = theta^a_i theta^b_j T_ab.
Tensor2 to_coordinates(const Tensor2& t, const PointData& pd);

// Coordinate-basis Ricci of the connection given by spec on chart.
Tensor2 ricci_coord(const Chart& chart, const Point& x, const TorsionSpec& spec);

// Two-sided check of the canonical torsion choice.
SuiteResult check_canonical_V(const WarpedSpec& spec, int samples, std::uint64_t seed,
                              double tol);

// c with Ric of (fiber, c * form) vanishing, by bisection on the first frame
// diagonal entry.
double solve_form_constant(const Chart& fiber, const FormFn& unit_form, const Point& x,
                           double lo, double hi);

}  // namespace vtlab
