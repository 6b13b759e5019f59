#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singcalc {

// Domain error codes. The string form is what the CLI writes into its
// machine-readable error object.
enum class Errc {
    InvalidFraction,
    NotReduced,
    PositionOutOfRange,
    EntryNotOne,
    NotWahl,
    DegenerateLength,
    MalformedDecoration,
    InvalidInput,
    BoundExceeded,
    NotMk1A,
    PreViolation,
    AmbiguousAttachment,
    UnsupportedConfiguration,
    StepBudgetExceeded,
    InvalidDescriptor,
    NotInK,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::InvalidFraction: return "invalid-fraction";
    case Errc::NotReduced: return "not-reduced";
    case Errc::PositionOutOfRange: return "position-out-of-range";
    case Errc::EntryNotOne: return "entry-not-one";
    case Errc::NotWahl: return "not-wahl";
    case Errc::DegenerateLength: return "degenerate-length";
    case Errc::MalformedDecoration: return "malformed-decoration";
    case Errc::InvalidInput: return "invalid-input";
    case Errc::BoundExceeded: return "bound-exceeded";
    case Errc::NotMk1A: return "not-mk1A";
    case Errc::PreViolation: return "pre-violation";
    case Errc::AmbiguousAttachment: return "ambiguous-attachment";
    case Errc::UnsupportedConfiguration: return "unsupported-configuration";
    case Errc::StepBudgetExceeded: return "step-budget-exceeded";
    case Errc::InvalidDescriptor: return "invalid-descriptor";
    case Errc::NotInK: return "not-in-K";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace singcalc
