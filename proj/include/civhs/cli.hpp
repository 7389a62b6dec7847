#ifndef CIVHS_CLI_HPP
#define CIVHS_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include "civhs/report.hpp"

namespace civhs::cli {

// stable exit-code contract
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUnsupported = 4;

struct CommandResult {
    report::Json envelope;
    int exit_code = kExitOk;
    std::string csv;  // optional side output (family scans)
};

// Curve analysis over a JSON input document:
// {"polynomial": "...", "declared_singularities": [{"point": ["0","0","1"],
//  "expected_type": "A1"}], "options": {...}}
CommandResult cmd_analyze(const std::string& input_json, uint64_t seed);

CommandResult cmd_verify_lemmas(uint64_t seed, int trials);

// Family scan over a JSON spec:
// {"degree": 4, "node_points": [["0","0","1"], ...], "sample_count": 25,
//  "seed": 1, "coefficient_box": {"numerator": 8, "denominator": 3}}
CommandResult cmd_family_scan(const std::string& spec_json, bool want_csv);

CommandResult cmd_surface_report(int e, int m, const std::string& singularities_csv);

}  // namespace civhs::cli

#endif
