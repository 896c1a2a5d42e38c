#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coopad {

/// Argument outside the mathematical domain of an operation (t outside
/// [0, T], theta outside [0, theta_max], boundary node for a residual).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation called on an input that violates its contract, e.g. state
/// integration on an infeasible coefficient path.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The subsidy scan found no feasible rate.
class OptimizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Violation {
    std::string field;
    std::string message;

    bool operator==(const Violation&) const = default;
};

/// Collects every invariant violation found while validating a
/// configuration, so callers can report all of them at once.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<Violation> violations)
        : std::invalid_argument(summarize(violations)), violations_(std::move(violations)) {}

    ConfigError(std::string field, std::string message)
        : ConfigError(std::vector<Violation>{{std::move(field), std::move(message)}}) {}

    const std::vector<Violation>& violations() const noexcept { return violations_; }

    bool names(const std::string& field) const {
        for (const auto& v : violations_) {
            if (v.field == field) return true;
        }
        return false;
    }

private:
    static std::string summarize(const std::vector<Violation>& vs) {
        std::string out = "invalid configuration:";
        for (const auto& v : vs) out += " [" + v.field + ": " + v.message + "]";
        return out;
    }

    std::vector<Violation> violations_;
};

}  // namespace coopad
