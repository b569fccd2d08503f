#include "vtlab/suite.hpp"

#include <algorithm>
#include <cmath>

namespace vtlab {

void SuiteResult::add(const std::string& name, double residual, double tol) {
    // NaN must never pass
    if (std::isnan(residual)) residual = INFINITY;
    for (auto& c : checks) {
        if (c.name == name && !c.lower_bound) {
            c.value = std::max(c.value, residual);
            return;
        }
    }
    checks.push_back({name, residual, tol, false});
}

void SuiteResult::add_floor(const std::string& name, double value, double floor) {
    if (std::isnan(value)) value = -INFINITY;
    for (auto& c : checks) {
        if (c.name == name && c.lower_bound) {
            c.value = std::min(c.value, value);
            return;
        }
    }
    checks.push_back({name, value, floor, true});
}

void SuiteResult::skip(const std::string& reason) {
    skipped = true;
    skip_reason = reason;
}

double SuiteResult::residual_max() const {
    double m = 0.0;
    for (const auto& c : checks)
        if (!c.lower_bound) m = std::max(m, c.value);
    return m;
}

bool SuiteResult::pass() const {
    if (skipped) return true;
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

}  // namespace vtlab
