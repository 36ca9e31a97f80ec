#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "kgbound/framework.hpp"

namespace kgbound {

// Natural units throughout: hbar = c = 1, energies and inverse lengths share a unit.

/// V = -z_alpha / r, no scalar part. A non-zero scalar_z_alpha is rejected.
struct Coulomb
{
    double z_alpha = 0.0;
    double scalar_z_alpha = 0.0;

    friend bool operator==(const Coulomb&, const Coulomb&) = default;
};

/// V = S = v0 [ (a/r)^2 / 2 - a/r ].
struct Mie
{
    double v0 = 0.0;
    double a = 1.0;

    friend bool operator==(const Mie&, const Mie&) = default;
};

/// V = S = ve (r - re)^2 / r^2.
struct KratzerFues
{
    double ve = 0.0;
    double re = 1.0;

    friend bool operator==(const KratzerFues&, const KratzerFues&) = default;
};

/// Radial part of V = S = alpha_c / r + beta / (r^2 cos^2 theta). The angular
/// problem is not solved here: its separation constant lambda_sep enters the
/// radial equation as lambda_sep / r^2 in place of l(l+1)/r^2.
struct NonCentralRadial
{
    double alpha_c = 0.0;
    double lambda_sep = 0.0;

    friend bool operator==(const NonCentralRadial&, const NonCentralRadial&) = default;
};

/// V = -v0 f(r), S = -s0 f(r), f = e^{-delta r} / (1 - q e^{-delta r}).
struct Hulthen
{
    double v0 = 0.0;
    double s0 = 0.0;
    double delta = 1.0;
    double q_def = 1.0;

    friend bool operator==(const Hulthen&, const Hulthen&) = default;
};

/// Coefficients of 1/r^2 ~ (d0 + d1 s + d2 s^2) / R^2.
struct PekerisCoefficients
{
    double d0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    friend bool operator==(const PekerisCoefficients&, const PekerisCoefficients&) = default;
};

/// V = -v0 s(r), S = -s0 s(r), s = 1 / (1 + q e^{(r - R)/a}).
struct WoodsSaxon
{
    double v0 = 0.0;
    double s0 = 0.0;
    double a = 1.0;
    double r_big = 1.0;
    double q_def = 1.0;
    /// Unset means the Taylor-matched default from pekeris_defaults().
    std::optional<PekerisCoefficients> pekeris{};

    friend bool operator==(const WoodsSaxon&, const WoodsSaxon&) = default;
};

/// V = S = -v1 / cosh^2(alpha r) + v2 / sinh^2(alpha r).
struct PoschlTeller
{
    double v1 = 0.0;
    double v2 = 0.0;
    double alpha_pt = 1.0;

    friend bool operator==(const PoschlTeller&, const PoschlTeller&) = default;
};

using PotentialSpec = std::variant<Coulomb, Mie, KratzerFues, NonCentralRadial, Hulthen, WoodsSaxon, PoschlTeller>;

/// Stable catalog name ("coulomb", "mie", ...).
std::string potential_name(const PotentialSpec& spec);

/// Throws InvalidParameters / UnsupportedCoupling for specs that cannot be mapped.
void validate(const PotentialSpec& spec, double m);

/// True for the three cases whose l > 0 mapping relies on a centrifugal approximation.
bool uses_centrifugal_approximation(const PotentialSpec& spec);

double vector_potential(const PotentialSpec& spec, double r);
double scalar_potential(const PotentialSpec& spec, double r);

/// Energy interval in which the far-field coefficient (m + S)^2 - (E - V)^2
/// stays positive, i.e. where bound states can live.
std::pair<double, double> continuum_thresholds(const PotentialSpec& spec, double m);

enum class TransformKind { identity_r, hulthen_s, woods_saxon_s, cosh_squared };

const char* to_string(TransformKind k) noexcept;

/// s together with 1 + c3 s, computed without cancellation near the
/// s = -1/c3 end of the domain.
struct SPoint
{
    double s = 0.0;
    double one_plus_c3s = 1.0;
};

/// Map r -> s used by a potential, and what the mapped unknown is.
struct VariableTransform
{
    TransformKind kind = TransformKind::identity_r;
    double rate = 1.0;   // delta, 1/a or alpha
    double shift = 0.0;  // R for Woods-Saxon
    double q_def = 1.0;
    double s_lo = 0.0;   // image of (0, inf), as an open interval
    double s_hi = 0.0;
    bool uses_u_substitution = false; // unknown is u = r R(r)

    SPoint at(double r) const;

    /// Exponent roots giving a normalizable, origin-regular solution for this map.
    RootChoice physical_roots() const;

    /// Whether s -> infinity is an end of the domain. When it is, only the
    /// lower X root of the Jacobi quantization condition is physical.
    bool infinity_in_domain() const;
};

struct MappedProblem
{
    OdeParameters params;
    VariableTransform transform;
};

/// Mapping for arbitrary l. Equivalent to modified_parameters applied to the
/// l = 0 mapping.
MappedProblem map_potential(const PotentialSpec& spec, double m, double energy, int ell);

/// Applies the angular-momentum term to an l = 0 mapping: exact for the
/// c3 = 0 cases, through the case's centrifugal approximation otherwise.
OdeParameters modified_parameters(const OdeParameters& base, const PotentialSpec& spec, double m,
                                  double energy, int ell);

VariableTransform make_transform(const PotentialSpec& spec);

/// delta^2 e^{-delta r} / (1 - e^{-delta r})^2
double centrifugal_hulthen(double delta, double r);

/// (d0 + d1 s(r) + d2 s(r)^2) / R^2 with the given (or default) coefficients.
double centrifugal_pekeris(const WoodsSaxon& spec, double r);

/// alpha^2 / sinh^2(alpha r)
double centrifugal_sinh(double alpha, double r);

/// Coefficients for which (d0 + d1 s + d2 s^2)/R^2 agrees with 1/r^2 and its
/// first two r-derivatives at r = R.
PekerisCoefficients pekeris_defaults(double a, double r_big, double q_def);

PekerisCoefficients resolved_pekeris(const WoodsSaxon& spec);

} // namespace kgbound
