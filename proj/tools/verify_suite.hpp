#ifndef ELLCFT_VERIFY_SUITE_HPP
#define ELLCFT_VERIFY_SUITE_HPP

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ellcft::cli {

struct SuiteOptions {
    std::string suite = "all";
    long order = 50;      // exact identities are checked through min(order, per-check order)
    double tol = 1e-10;   // numeric threshold, raised to a per-check floor where finite differences or
                          // slowly converging sums need it
    std::uint64_t seed = 0;
    int samples = 20;
};

struct CheckResult {
    std::string id;  // "<module>.<name>"
    bool pass = false;
    bool exact = false;    // exact checks report a mismatch location instead of a residual
    double residual = 0;
    double threshold = 0;
    std::string mismatch;  // empty when nothing failed
    double runtime_ms = 0;
};

struct SuiteReport {
    SuiteOptions options;
    std::vector<CheckResult> checks;  // sorted by id
    long failed() const;
};

// "all", "qseries", "modgroup", "elliptic", "modforms", "cft", "lattice", "thermo"
const std::vector<std::string>& suite_names();
std::vector<std::string> check_ids(const std::string& suite);  // throws InvalidArgument
SuiteReport run_suite(const SuiteOptions& o);                    // checks run in parallel

// runtimes are included only on request so the default output is byte-identical across runs
nlohmann::json report_json(const SuiteReport& r, bool timing);
std::string report_csv(const SuiteReport& r, bool timing);

}  // namespace ellcft::cli

#endif
