#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace uff {

// One end-to-end check of the library against its contract, at pinned
// tolerances. Wall time is kept out of the serialized report so repeated
// runs with the same seed produce identical bytes.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double metric = 0.0;    // the measured quantity
    double threshold = 0.0; // what it is compared against
    std::string detail;
    double seconds = 0.0;   // diagnostics only, excluded from the report
};

struct AcceptanceReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;

    bool all_pass() const;
};

// Criteria 1-7. Pure function of the seed.
AcceptanceReport run_criteria(std::uint64_t seed);

// Criteria 1-7 executed twice; the eighth criterion compares the two
// serialized reports byte for byte.
AcceptanceReport run_full_acceptance(std::uint64_t seed);

nlohmann::json report_to_json(const AcceptanceReport& report);

// One PASS/FAIL line per criterion plus a summary line.
void print_report(const AcceptanceReport& report, std::ostream& out);

} // namespace uff
