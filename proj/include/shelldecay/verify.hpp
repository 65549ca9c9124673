#pragma once

#include <string>
#include <vector>

#include "shelldecay/model.hpp"

namespace shelldecay {

enum class CheckStatus { pass, fail, inconclusive };

std::string_view to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double value = 0.0;      // worst measured quantity
    double threshold = 0.0;  // bound it is compared against
    std::string detail;
};

struct VerifyConfig {
    double intensity = 9.0 * kPi / 2.0;
    double radius = 1.0;
    int truncation = 40;
    bool with_oracle = true;
};

/// Structural invariants of the pole set, the resonant basis, and the expansion for the
/// q = 1 box state. Sum-rule and closure trends need N >= 20 pairs; with fewer they are
/// reported as inconclusive instead of pass/fail.
std::vector<CheckResult> run_verification(const VerifyConfig& cfg);

}  // namespace shelldecay
