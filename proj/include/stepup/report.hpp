#ifndef STEPUP_REPORT_HPP
#define STEPUP_REPORT_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

namespace stepup {

/// FNV-1a, 64-bit. Byte-oriented, so identical on every platform.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t x) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << x;
    return os.str();
}

enum class ExitCode : int { ok = 0, refuted = 1, usage = 2, budget = 3 };

/**
 * Machine-readable record of one run. Inputs are collected as key/value pairs
 * (file inputs by content) and hashed in key order for the digest.
 */
struct RunReport {
    std::string command;
    std::map<std::string, std::string> inputs;
    std::uint64_t seed = 0;
    nlohmann::json outputs = nlohmann::json::object();
    nlohmann::json verdicts = nlohmann::json::object();
    double elapsed_ms = 0;

    std::string digest() const {
        std::string canon = command + '\n';
        for (const auto& [k, v] : inputs) canon += k + '=' + v + '\n';
        return hex64(fnv1a64(canon));
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["inputs_digest"] = digest();
        j["seed"] = seed;
        j["outputs"] = outputs;
        j["verdicts"] = verdicts;
        j["timing_ms"] = elapsed_ms;
        return j;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "command: " << command << '\n';
        os << "inputs_digest: " << digest() << '\n';
        os << "seed: " << seed << '\n';
        for (const auto& [k, v] : outputs.items()) os << k << ": " << render(v) << '\n';
        for (const auto& [k, v] : verdicts.items()) os << "verdict " << k << ": " << render(v) << '\n';
        os << "timing_ms: " << elapsed_ms << '\n';
        return os.str();
    }

private:
    static std::string render(const nlohmann::json& v) {
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            // multi-line payloads (DOT, TSV, graph text) go on their own lines
            return s.find('\n') == std::string::npos ? s : "\n" + s;
        }
        return v.dump();
    }
};

} // namespace stepup

#endif // STEPUP_REPORT_HPP
