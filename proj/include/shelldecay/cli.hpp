#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace shelldecay::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNoResult = 3;
inline constexpr int kNumericalFailure = 4;

/// A time given either absolutely ("3.5") or in lifetimes ("40tau").
struct TimeArg {
    double value = 0.0;
    bool in_tau = false;

    double resolve(double tau) const { return in_tau ? value * tau : value; }
};

/// DomainError on anything that is not a positive number with an optional "tau" suffix.
TimeArg parse_time(const std::string& text);

/// "lo:hi" with lo < hi, both positive. DomainError otherwise.
std::pair<double, double> parse_range(const std::string& text);

/// Parses argv and runs one subcommand. Data goes to `out` unless --output is given;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shelldecay::cli
