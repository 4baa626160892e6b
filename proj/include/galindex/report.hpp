#ifndef GALINDEX_REPORT_HPP
#define GALINDEX_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "galindex/catalog.hpp"
#include "galindex/extension_spec.hpp"
#include "galindex/oracle.hpp"
#include "galindex/ramification.hpp"

namespace galindex {

struct AnalysisOptions {
    bool with_oracle = false;
    unsigned precision = 0;       // 0: spec value, else 32
    unsigned precision_cap = 4096; // doubling stops here
    unsigned long budget = 10000000;
    unsigned threads = 0; // 0: hardware concurrency, 1: serial
};

struct ReportDocument {
    nlohmann::json input;
    RamificationProfile profile;
    IndexReport formulas;
    std::optional<OracleResult> oracle;
    nlohmann::json agreement; // null when the oracle did not run
    bool agree = true;        // overall verdict (true when nothing to compare)
    long timing_ms = 0;
    unsigned precision_used = 0;
};

/* Build the tower, derive profile and closed forms, optionally run the
 * oracle; on PrecisionExhausted the whole pipeline retries at doubled
 * precision up to the cap. */
ReportDocument analyze(const ExtensionSpec& spec, const AnalysisOptions& opts);

nlohmann::json profile_to_json(const RamificationProfile& pr);
nlohmann::json formulas_to_json(const IndexReport& rep);
nlohmann::json oracle_to_json(const OracleResult& res);
nlohmann::json report_to_json(const ReportDocument& doc);
// the precision- and timing-independent part, for determinism comparisons
nlohmann::json report_values_json(const ReportDocument& doc);

std::string render_report_text(const ReportDocument& doc);

/* One sweep row per valid jump t for the given (p, e <= e_max, f_K), with
 * every closed-form invariant checked; violations come back as messages. */
struct SweepRow {
    unsigned e = 0;
    long t = 0;
    unsigned a = 0;
    long t0 = 0;
    std::vector<long> nu;
    long mu = 0;
    long v_p_m = 0;
    long sum_n = 0;
    bool free = false;
    bool almost_maximal = false;
    Rational bound;
};
struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> violations;
};
SweepResult sweep_profiles(unsigned long p, unsigned e_max, unsigned f_K);
nlohmann::json sweep_to_json(const SweepResult& s);

// closed-form invariant checks for a single profile (used by the sweep)
std::vector<std::string> formula_invariant_violations(const RamificationProfile& pr);

struct CatalogOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};
/* Run every catalog entry with the oracle and compare against expectations.
 * When inject_mismatch is set, one expectation is deliberately corrupted
 * (test mode for the failure path). A non-empty filter restricts the run to
 * the entry with that name. */
std::vector<CatalogOutcome> verify_catalog(const AnalysisOptions& opts, bool inject_mismatch,
                                           const std::string& filter = "");

} // namespace galindex

#endif
