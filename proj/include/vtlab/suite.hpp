#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vtlab {

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool lower_bound = false;  // pass iff value >= threshold (separation witness)

    bool pass() const { return lower_bound ? value >= threshold : value <= threshold; }
};

struct SuiteResult {
    std::string suite;
    std::string chart;
    std::string vfield;
    double tolerance = 1e-9;
    int samples = 0;
    std::uint64_t seed = 0;
    bool skipped = false;
    std::string skip_reason;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    // Records max(value) for an existing upper-bound check of this name.
    void add(const std::string& name, double residual, double tol);
    void add_floor(const std::string& name, double value, double floor);
    void skip(const std::string& reason);

    double residual_max() const;  // over upper-bound checks
    bool pass() const;            // all checks pass (skipped counts as pass)
};

}  // namespace vtlab
