#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "vtlab/catalog.hpp"
#include "vtlab/suite.hpp"
#include "vtlab/torus.hpp"

namespace vtlab {

enum class Format { Json, Csv, Text };
Format parse_format(const std::string& s);  // Config error on anything else

nlohmann::json to_json(const SuiteResult& r);
nlohmann::json to_json(const Chart& c);
nlohmann::json to_json(const ParallelDetection& d);

// Report text for a finished verify run. Deterministic for equal input.
std::string verify_report(const std::vector<SuiteResult>& results, Format f);
std::string catalog_report(const std::vector<ChartPtr>& charts, Format f);

// columns re,im,index
std::string spectrum_csv(const std::vector<std::complex<double>>& values);
// adds the matched Riemannian eigenvalue and the pairing distance
std::string spectrum_csv(const IsospectralResult& r);
nlohmann::json parallel_table(const std::vector<ParallelDetection>& cells);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace vtlab
