#include "kgbound/error.hpp"

namespace kgbound {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::negative_discriminant: return "NegativeDiscriminant";
    case ErrorCode::zero_c3: return "ZeroC3";
    case ErrorCode::nonzero_c3: return "NonzeroC3";
    case ErrorCode::nonpositive_scale: return "NonpositiveScale";
    case ErrorCode::branch_mismatch: return "BranchMismatch";
    case ErrorCode::degenerate_recurrence: return "DegenerateRecurrence";
    case ErrorCode::nonpositive_argument: return "NonpositiveArgument";
    case ErrorCode::non_finite_input: return "NonFiniteInput";
    case ErrorCode::unsupported_coupling: return "UnsupportedCoupling";
    case ErrorCode::invalid_parameters: return "InvalidParameters";
    case ErrorCode::hulthen_deformation_unsupported: return "HulthenDeformationUnsupported";
    case ErrorCode::supercritical_coupling: return "SupercriticalCoupling";
    case ErrorCode::no_root_in_window: return "NoRootInWindow";
    case ErrorCode::discriminant_lost_mid_bracket: return "DiscriminantLostMidBracket";
    case ErrorCode::invalid_window: return "InvalidWindow";
    case ErrorCode::transform_domain_violation: return "TransformDomainViolation";
    case ErrorCode::non_decaying_tail: return "NonDecayingTail";
    case ErrorCode::no_transition_in_window: return "NoTransitionInWindow";
    case ErrorCode::mismatched_problem: return "MismatchedProblem";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

} // namespace kgbound
