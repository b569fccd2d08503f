#include "vtlab/report.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vtlab {

namespace {

// JSON has no infinity; a failed evaluation is reported as null.
nlohmann::json number(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "text") return Format::Text;
    throw Error(ErrorKind::Config, "unknown format '" + s + "' (json, csv or text)");
}

nlohmann::json to_json(const SuiteResult& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["chart"] = r.chart;
    j["vfield"] = r.vfield;
    j["pass"] = r.pass();
    j["skipped"] = r.skipped;
    if (r.skipped) j["skip_reason"] = r.skip_reason;
    j["residual_max"] = number(r.residual_max());
    j["tolerance"] = r.tolerance;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"value", number(c.value)},
                          {"threshold", c.threshold},
                          {"kind", c.lower_bound ? "floor" : "residual"},
                          {"pass", c.pass()}});
    }
    j["checks"] = checks;
    j["notes"] = r.notes;
    return j;
}

nlohmann::json to_json(const Chart& c) {
    nlohmann::json j;
    j["id"] = c.id;
    j["aliases"] = c.aliases;
    j["dim"] = c.dim;
    std::vector<int> sig(c.signature.begin(), c.signature.begin() + c.dim);
    j["signature"] = sig;
    j["description"] = c.description;
    auto keys = [](const auto& m) {
        std::vector<std::string> out;
        for (const auto& kv : m) out.push_back(kv.first);
        return out;
    };
    j["vfields"] = keys(c.vfields);
    j["scalars"] = keys(c.scalars);
    j["forms"] = keys(c.forms);
    j["spinors"] = keys(c.spinors);
    std::vector<double> per(c.period.begin(), c.period.begin() + c.dim);
    j["period"] = per;
    return j;
}

nlohmann::json to_json(const ParallelDetection& d) {
    return {{"eps1", d.spin.e1},
            {"eps2", d.spin.e2},
            {"v1", d.v1},
            {"v2", d.v2},
            {"oracle_dim", d.oracle_dim},
            {"pointwise_dim", d.pointwise_dim},
            {"kernel_dim", d.kernel_dim},
            {"parallel_residual", d.parallel_residual},
            {"paper_formula_predicts", d.displayed_predicts},
            {"agree", d.agree},
            {"paper_formula_agrees", d.displayed_agree}};
}

std::string verify_report(const std::vector<SuiteResult>& results, Format f) {
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& r : results) {
        if (r.skipped)
            ++skipped;
        else if (r.pass())
            ++passed;
        else
            ++failed;
    }
    std::ostringstream out;
    if (f == Format::Json) {
        nlohmann::json j;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) arr.push_back(to_json(r));
        j["results"] = arr;
        j["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped},
                        {"pass", failed == 0}};
        out << j.dump(2) << "\n";
    } else if (f == Format::Csv) {
        out << "suite,chart,vfield,check,kind,value,threshold,pass,skipped\n";
        for (const auto& r : results) {
            const std::string head = r.suite + "," + csv_field(r.chart) + "," + csv_field(r.vfield) + ",";
            if (r.skipped) {
                out << head << ",,,,true,true\n";
                continue;
            }
            for (const Check& c : r.checks) {
                out << head << c.name << "," << (c.lower_bound ? "floor" : "residual") << ","
                    << num(c.value) << "," << num(c.threshold) << "," << (c.pass() ? "true" : "false")
                    << ",false\n";
            }
        }
    } else {
        for (const auto& r : results) {
            char buf[512];
            if (r.skipped) {
                std::snprintf(buf, sizeof buf, "skip %-22s %-24s %-24s %s\n", r.suite.c_str(),
                              r.chart.c_str(), r.vfield.c_str(), r.skip_reason.c_str());
                out << buf;
                continue;
            }
            std::snprintf(buf, sizeof buf, "%-4s %-22s %-24s %-24s residual %.3e (tol %.0e)\n",
                          r.pass() ? "ok" : "FAIL", r.suite.c_str(), r.chart.c_str(), r.vfield.c_str(),
                          r.residual_max(), r.tolerance);
            out << buf;
            for (const Check& c : r.checks)
                if (c.lower_bound && c.pass())
                    out << "       " << c.name << " = " << num(c.value) << " (floor " << num(c.threshold)
                        << ")\n";
            if (!r.pass())
                for (const Check& c : r.checks)
                    if (!c.pass())
                        out << "       " << c.name << " = " << num(c.value)
                            << (c.lower_bound ? " below floor " : " above ") << num(c.threshold) << "\n";
        }
        out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    }
    return out.str();
}

std::string catalog_report(const std::vector<ChartPtr>& charts, Format f) {
    std::ostringstream out;
    if (f == Format::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : charts) arr.push_back(to_json(*c));
        out << arr.dump(2) << "\n";
        return out.str();
    }
    auto join = [](const auto& m) {
        std::string s;
        for (const auto& kv : m) s += (s.empty() ? "" : " ") + kv.first;
        return s.empty() ? std::string("-") : s;
    };
    if (f == Format::Csv) {
        out << "id,dim,index,vfields,scalars,forms,spinors\n";
        for (const auto& c : charts)
            out << csv_field(c->id) << "," << c->dim << "," << c->index() << "," << join(c->vfields)
                << "," << join(c->scalars) << "," << join(c->forms) << "," << join(c->spinors) << "\n";
        return out.str();
    }
    for (const auto& c : charts) {
        std::string sig;
        for (int i = 0; i < c->dim; ++i) sig += c->signature[i] > 0 ? '+' : '-';
        out << c->id << "  n=" << c->dim << " (" << sig << ")  " << c->description << "\n";
        for (const auto& a : c->aliases) out << "    alias    " << a << "\n";
        out << "    vfields  " << join(c->vfields) << "\n";
        out << "    scalars  " << join(c->scalars) << "\n";
        if (!c->forms.empty()) out << "    forms    " << join(c->forms) << "\n";
        if (!c->spinors.empty()) out << "    spinors  " << join(c->spinors) << "\n";
    }
    return out.str();
}

std::string spectrum_csv(const std::vector<std::complex<double>>& values) {
    std::ostringstream out;
    out << "re,im,index\n";
    for (size_t i = 0; i < values.size(); ++i)
        out << num(values[i].real()) << "," << num(values[i].imag()) << "," << i << "\n";
    return out.str();
}

std::string spectrum_csv(const IsospectralResult& r) {
    std::ostringstream out;
    out << "re,im,index,riemannian_re,riemannian_im,distance\n";
    for (size_t i = 0; i < r.values.size(); ++i) {
        const auto& a = r.values[i];
        const auto& b = r.paired[i];
        out << num(a.real()) << "," << num(a.imag()) << "," << i << "," << num(b.real()) << ","
            << num(b.imag()) << "," << num(std::abs(a - b)) << "\n";
    }
    return out.str();
}

nlohmann::json parallel_table(const std::vector<ParallelDetection>& cells) {
    nlohmann::json rows = nlohmann::json::array();
    int agree = 0, displayed = 0;
    for (const auto& d : cells) {
        rows.push_back(to_json(d));
        agree += d.agree;
        displayed += d.displayed_agree;
    }
    return {{"rows", rows},
            {"cells", cells.size()},
            {"oracle_pointwise_kernel_agree", agree},
            {"paper_formula_agrees", displayed},
            {"paper_formula_disagrees", static_cast<int>(cells.size()) - displayed}};
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::Config, "cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) throw Error(ErrorKind::Config, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(ErrorKind::Config, "cannot rename onto '" + path + "': " + ec.message());
    }
}

}  // namespace vtlab
