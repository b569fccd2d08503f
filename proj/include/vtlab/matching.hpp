#pragma once

#include <complex>
#include <vector>

namespace vtlab {

// Minimum-cost assignment of every row to a distinct column (rows <= cols).
// Returns the column chosen for each row.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

struct Pairing {
    std::vector<int> match;  // index into `pool` for each element of `a`
    double max_distance = 0.0;
    double total = 0.0;
};

// Pairs each of `a` with a distinct element of `pool` minimizing the total
// distance |a_i - pool_j|.
Pairing pair_spectra(const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& pool);

}  // namespace vtlab
