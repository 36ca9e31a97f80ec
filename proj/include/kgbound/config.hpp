#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kgbound/eigensolver.hpp"
#include "kgbound/oracle.hpp"
#include "kgbound/wavefunctions.hpp"

namespace kgbound::cli {

constexpr int schema_version = 1;

enum class Command { solve, spectrum, wavefunction, verify, list_potentials };

const char* to_string(Command c) noexcept;

enum class NormMeasure { schrodinger, klein_gordon };

/// One potential with its quantum-number range.
struct CaseConfig
{
    std::string id;
    PotentialSpec spec{};
    double mass = 1.0;
    int n = 0;       // solve, wavefunction
    int ell = 0;     // solve, wavefunction
    int n_max = 0;   // spectrum, verify
    int ell_max = 0; // spectrum, verify
    oracle::Centrifugal centrifugal = oracle::Centrifugal::approximate;
};

struct WindowConfig
{
    std::optional<double> lo;
    std::optional<double> hi;
    EnergySign sign = EnergySign::particle;
    int scan_points = 2048;
};

struct GridConfig
{
    std::optional<double> r_min;
    std::optional<double> r_max;
    int count = 4097;
    GridSpacing spacing = GridSpacing::log;
};

struct JobConfig
{
    Command command = Command::spectrum;
    std::vector<CaseConfig> cases;
    WindowConfig window;
    double tolerance = default_tolerance;
    GridConfig grid;
    NormMeasure normalization = NormMeasure::schrodinger;
    double energy_tolerance = 1e-6;
    double overlap_threshold = 1.0 - 1e-9;
    int oracle_scan_points = 256;
    std::string output_dir = ".";
    std::vector<std::string> warnings;
};

/// Parses and validates a JSON job. Unknown keys, missing required keys,
/// wrong types and physically invalid parameters all raise ConfigError.
JobConfig parse_config(const std::string& json_text);
JobConfig load_config(const std::filesystem::path& path);

/// Window for one case: configured bounds, defaulting to the continuum thresholds.
EnergyWindow resolve_window(const JobConfig& job, const CaseConfig& c);

struct CatalogEntry
{
    const char* name;
    const char* summary;
    const char* parameters;
};

const std::vector<CatalogEntry>& potential_catalog();

} // namespace kgbound::cli
