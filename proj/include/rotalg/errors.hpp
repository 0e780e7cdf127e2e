#pragma once

#include <stdexcept>
#include <string>

namespace rotalg {

// Error taxonomy. Every failure mode carries a stable kind so callers
// (and the CLI) can map failures to exit codes without string matching.
enum class errc {
    not_discrete,
    trivial_group,
    invalid_delta,
    no_covering_chart,
    epsilon_too_large,
    quadrature_failure,
    fit_residual_too_large,
    bandlimit_overflow,
    support_escape,
    not_composable,
    precondition_violated,
    witness_inconsistent,
    window_too_small,
    projection_residual_too_large,
    empty_fibered_product,
    bad_input,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_discrete: return "NotDiscrete";
        case errc::trivial_group: return "TrivialGroup";
        case errc::invalid_delta: return "InvalidDelta";
        case errc::no_covering_chart: return "NoCoveringChart";
        case errc::epsilon_too_large: return "EpsilonTooLarge";
        case errc::quadrature_failure: return "QuadratureFailure";
        case errc::fit_residual_too_large: return "FitResidualTooLarge";
        case errc::bandlimit_overflow: return "BandlimitOverflow";
        case errc::support_escape: return "SupportEscape";
        case errc::not_composable: return "NotComposable";
        case errc::precondition_violated: return "PreconditionViolated";
        case errc::witness_inconsistent: return "WitnessInconsistent";
        case errc::window_too_small: return "WindowTooSmall";
        case errc::projection_residual_too_large: return "ProjectionResidualTooLarge";
        case errc::empty_fibered_product: return "EmptyFiberedProduct";
        case errc::bad_input: return "BadInput";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

} // namespace rotalg
