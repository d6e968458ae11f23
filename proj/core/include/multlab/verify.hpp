#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace multlab {

struct CheckResult {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;

    nlohmann::json to_json() const;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool pass() const;
    nlohmann::json to_json() const;
    // One line per check.
    std::string text() const;
};

// frames, norms, engine, families, interpolation
const std::vector<std::string>& verify_suites();

// Runs one suite, or every suite for "all". Unknown names raise ConfigError.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed = 0);

} // namespace multlab
