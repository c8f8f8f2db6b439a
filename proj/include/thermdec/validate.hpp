#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thermdec::validate {

struct ValidationEntry {
    std::string name;
    double engine_value = 0.0;
    double reference_value = 0.0;
    double difference = 0.0;    // engine - reference
    double tolerance = 0.0;     // bound |difference| is held to
    bool pass = false;
    bool informational = false; // recorded but not counted against all_pass
    std::string note;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;
    bool all_pass = false;      // every non-informational entry passed
};

struct ValidateOptions {
    std::uint64_t seed = 12345;
    bool quick = false;  // smaller Monte Carlo budgets, skip the slowest points
    int n_workers = 1;
};

// Cross-checks every engine against its independent oracle and adjudicates
// the decay-law coefficients that circulate in two variants.
ValidationReport run_validation(const ValidateOptions& opt);

std::string render_report_text(const ValidationReport& report);

}  // namespace thermdec::validate
