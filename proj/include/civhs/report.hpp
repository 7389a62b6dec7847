#ifndef CIVHS_REPORT_HPP
#define CIVHS_REPORT_HPP

#include <cstdint>
#include <string>
#include <json.hpp>
#include "civhs/rational.hpp"

namespace civhs::report {

// Canonical serialization: nlohmann's object keys are kept sorted, rationals
// are emitted as "p/q" strings, so identical inputs and seeds produce
// byte-identical documents.
using Json = nlohmann::json;

inline std::string rat_json(const Rat& r) { return rat_to_string(r); }

std::string input_digest(const std::string& payload);

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kSchemaVersion = "1";

Json envelope(const std::string& command, const std::string& digest, uint64_t seed);

std::string dump_canonical(const Json& j);

}  // namespace civhs::report

#endif
