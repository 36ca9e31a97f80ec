#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgbound {

enum class ErrorCode {
    // framework
    negative_discriminant,
    zero_c3,
    nonzero_c3,
    nonpositive_scale,
    branch_mismatch,
    // special functions
    degenerate_recurrence,
    nonpositive_argument,
    non_finite_input,
    // potentials
    unsupported_coupling,
    invalid_parameters,
    hulthen_deformation_unsupported,
    // eigensolver
    supercritical_coupling,
    no_root_in_window,
    discriminant_lost_mid_bracket,
    invalid_window,
    // wavefunctions
    transform_domain_violation,
    non_decaying_tail,
    // oracle
    no_transition_in_window,
    mismatched_problem,
    // cli
    config_error,
    io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable code. All library failures are
/// reported through this type.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace kgbound
