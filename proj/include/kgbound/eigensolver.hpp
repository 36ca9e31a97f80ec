#pragma once

#include <string>
#include <vector>

#include "kgbound/error.hpp"
#include "kgbound/framework.hpp"
#include "kgbound/potentials.hpp"

namespace kgbound {

enum class EnergySign { particle, antiparticle };

const char* to_string(EnergySign s) noexcept;

/// Search interval for one bound state.
struct EnergyWindow
{
    double lo = -1.0;
    double hi = 1.0;
    EnergySign sign = EnergySign::particle;
    int scan_points = 2048;
};

/// The full bound-state window of a potential: between its continuum
/// thresholds, which is (-m, m) for every potential vanishing at infinity.
EnergyWindow default_window(const PotentialSpec& spec, double m, EnergySign sign = EnergySign::particle,
                            int scan_points = 2048);

constexpr double default_tolerance = 1e-12;

struct Interval
{
    double lo = 0.0;
    double hi = 0.0;
};

struct BoundState
{
    int n = 0;
    int ell = 0;
    double energy = 0.0;
    double mass = 1.0;
    PotentialSpec spec{};
    OdeParameters params{};
    ExponentSolution exponents{};
    VariableTransform transform{};
    /// Multiplies the factorized solution; 1 until a normalization is applied.
    double norm_constant = 1.0;

    // Diagnostics from the root search.
    double residual = 0.0;                 // quantization residual at `energy`
    Interval bracket{};                    // final bisection bracket
    std::vector<Interval> excised;         // scan sub-intervals without real exponents
    std::vector<double> other_roots;       // further physical roots for the same (n, l)
    std::vector<double> rejected_roots;    // roots on the unphysical branch of the quadratic
};

/// Closed-form Coulomb level
///   E = +-m [1 + (z_alpha)^2 / (n + 1/2 + sqrt((l+1/2)^2 - z_alpha^2))^2]^{-1/2}.
double coulomb_energy(double z_alpha, double m, int n, int ell, EnergySign sign = EnergySign::particle);

/// Mapped parameters, exponents and quantization residual at one trial energy,
/// using the transform's physical root choice.
struct ResidualEvaluation
{
    OdeParameters params;
    VariableTransform transform;
    ExponentSolution exponents;
    QuantizationResidual residual;
};

ResidualEvaluation evaluate_residual(const PotentialSpec& spec, double m, int n, int ell, double energy);

/// BoundState-shaped record at an arbitrary energy, with no root search. Used
/// to probe the assembled solution away from the eigenvalue.
BoundState trial_state(const PotentialSpec& spec, double m, int n, int ell, double energy);

/// Scan-and-bisect search for the (n, l) level inside `window`. The returned
/// bracket has opposite residual signs and width <= tol * m.
BoundState solve_energy(const PotentialSpec& spec, double m, int n, int ell, const EnergyWindow& window,
                        double tol = default_tolerance);

struct MissingState
{
    int n = 0;
    int ell = 0;
    ErrorCode code = ErrorCode::no_root_in_window;
    std::string message;
};

struct Spectrum
{
    std::vector<BoundState> states; // sorted by (ell, n)
    std::vector<MissingState> missing;
};

/// All (n, l) with n <= n_max and l <= ell_max. Entries are independent and
/// may run on up to `threads` workers (0 = hardware concurrency); the result
/// does not depend on the thread count.
Spectrum spectrum(const PotentialSpec& spec, double m, int n_max, int ell_max, const EnergyWindow& window,
                  double tol = default_tolerance, int threads = 1);

} // namespace kgbound
