#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "kgbound/eigensolver.hpp"

namespace kgbound::oracle {

/// Which angular-momentum term enters W: the true l(l+1)/r^2, or the
/// approximation the algebraic solution uses for this potential.
enum class Centrifugal { exact, approximate };

const char* to_string(Centrifugal c) noexcept;

/// u'' = W(r, E) u with W = (m + S)^2 - (E - V)^2 + L(r), built from the
/// potential functions alone (never from the algebraic mapping).
struct EffectiveProblem
{
    PotentialSpec spec{};
    double mass = 1.0;
    int ell = 0;
    Centrifugal centrifugal = Centrifugal::approximate;

    double centrifugal_term(double r) const;
    double w(double r, double energy) const;

    /// Coefficients of 1/r^2 and 1/r in W as r -> 0.
    double singular_c2(double energy) const;
    double singular_c1(double energy) const;

    /// Leading exponent of u ~ r^sigma at the origin.
    double indicial_exponent(double energy) const;

    /// Length on which the potential varies.
    double length_scale() const;

    /// Far-field decay constant sqrt((m + S_inf)^2 - (E - V_inf)^2), 0 when unbound.
    double decay_constant(double energy) const;
};

EffectiveProblem make_problem(const PotentialSpec& spec, double m, int ell,
                              Centrifugal centrifugal = Centrifugal::approximate);

/// Step control for the fixed-step integrator. The step at r is
/// min(rho r, eta / sqrt|W|, eta / |W'|^{1/3}, h_max).
struct StepControl
{
    double rho = 0.01;
    double eta = 0.01;
    double h_max = std::numeric_limits<double>::infinity();
};

struct Integration
{
    std::vector<double> r;
    std::vector<double> u;
    int node_count = 0;
    /// Radii at which u was rescaled to avoid overflow. The samples before a
    /// reset are divided by the same factor, so u stays one function.
    std::vector<double> rescale_points;
};

constexpr double overflow_threshold = 1e150;

/// RK4 integration of u'' = W u from a two-term series start at r_min out
/// to r_max.
Integration integrate_u(const EffectiveProblem& problem, double energy, double r_min, double r_max,
                        const StepControl& steps = {});

/// Outer radius for a shooting run at this energy: past the last classical
/// turning point by `decay_lengths` / kappa.
double shooting_radius(const EffectiveProblem& problem, double energy, double decay_lengths = 36.0);

/// Default start radius, 1e-6 of the characteristic length.
double start_radius(const EffectiveProblem& problem);

struct ShootResult
{
    EffectiveProblem problem;
    int n = 0;
    double energy = 0.0;
    double bracket_lo = 0.0; // <= n nodes
    double bracket_hi = 0.0; // > n nodes
    Integration solution;    // at bracket_lo, tail truncated at its minimum
};

/// Locates the energy where the node count of u changes from n (below) to
/// n + 1 (above), scanning down from window.hi and bisecting to tol * m.
ShootResult shoot(const EffectiveProblem& problem, int n, const EnergyWindow& window, double tol = 1e-14,
                  const StepControl& steps = {});

struct CompareOptions
{
    double energy_tolerance = 1e-6; // in units of m
    double overlap_threshold = 1.0 - 1e-9;
};

struct Comparison
{
    std::string case_id;
    int n = 0;
    int ell = 0;
    Centrifugal centrifugal = Centrifugal::approximate;
    bool same_treatment = true; // both sides use the same centrifugal term
    double e_algebraic = 0.0;
    double e_numeric = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0; // abs_diff / m
    double overlap = 0.0;
    double tolerance = 0.0;
    bool energy_pass = false;
    bool overlap_pass = false;
    bool pass = false;
};

/// Overlap |<R_alg|R_num>| / (|R_alg| |R_num|) with measure r^2 dr on the
/// numeric grid.
double overlap(const BoundState& algebraic, const Integration& numeric);

Comparison compare(const BoundState& algebraic, const ShootResult& numeric, const CompareOptions& options = {});

/// One row of a golden file.
struct GoldenEntry
{
    std::string case_id;
    int n = 0;
    int ell = 0;
    double energy = 0.0;
    double tolerance = 0.0;
};

void write_goldens(const std::filesystem::path& path, const std::vector<GoldenEntry>& entries);
std::vector<GoldenEntry> read_goldens(const std::filesystem::path& path);

} // namespace kgbound::oracle
