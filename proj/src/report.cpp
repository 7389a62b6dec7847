#include "civhs/report.hpp"

#include <sstream>

namespace civhs::report {

std::string input_digest(const std::string& payload) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << h;
    return os.str();
}

Json envelope(const std::string& command, const std::string& digest, uint64_t seed) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["input_digest"] = digest;
    j["seed"] = seed;
    j["tension_flags"] = Json::array();
    return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace civhs::report
