#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vtlab/chart.hpp"

namespace vtlab {

inline constexpr double kPi = 3.14159265358979323846;

using ChartPtr = std::shared_ptr<const Chart>;

// Built once, on first use.
const std::vector<ChartPtr>& catalog();

// Lookup by id or alias; UnknownId when absent.
ChartPtr find_chart(const std::string& id);

// Shell-style match ('*' and '?') against the id or any alias.
bool glob_match(const std::string& pattern, const std::string& text);
std::vector<ChartPtr> select_charts(const std::string& pattern);

// Smooth random field; trigonometric with integer frequencies along periodic
// coordinates so it respects the periods.
VectorFn random_vfield(const Chart& chart, std::uint64_t seed);

// Euclidean metric on R^k restricted to [-1, 1]^k (fiber building block).
ChartPtr flat_fiber(int k);

}  // namespace vtlab
