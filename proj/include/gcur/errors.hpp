#pragma once

#include <stdexcept>
#include <string>

namespace gcur {

enum class errc {
    parabolic_or_elliptic,
    domain_error,
    unknown_preset,
    trivial_class,
    non_termination,
    budget_exceeded,
    not_hyperbolic,
    degenerate,
    degenerate_crossing,
    non_primitive,
    infeasible_params,
    not_hyperbolic_after_cut,
    closing_failed,
    rejection_budget,
    not_filling,
    bad_config,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::parabolic_or_elliptic:     return "ParabolicOrElliptic";
        case errc::domain_error:              return "DomainError";
        case errc::unknown_preset:            return "UnknownPreset";
        case errc::trivial_class:             return "TrivialClass";
        case errc::non_termination:           return "NonTermination";
        case errc::budget_exceeded:           return "BudgetExceeded";
        case errc::not_hyperbolic:            return "NotHyperbolic";
        case errc::degenerate:                return "Degenerate";
        case errc::degenerate_crossing:       return "DegenerateCrossing";
        case errc::non_primitive:             return "NonPrimitive";
        case errc::infeasible_params:         return "InfeasibleParams";
        case errc::not_hyperbolic_after_cut:  return "NotHyperbolicAfterCut";
        case errc::closing_failed:            return "ClosingFailed";
        case errc::rejection_budget:          return "RejectionBudget";
        case errc::not_filling:               return "NotFilling";
        case errc::bad_config:                return "BadConfig";
        case errc::io_error:                  return "IoError";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace gcur
