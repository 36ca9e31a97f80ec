#pragma once

#include <functional>
#include <vector>

#include "kgbound/eigensolver.hpp"

namespace kgbound {

enum class GridSpacing { uniform, log };

const char* to_string(GridSpacing g) noexcept;

struct RadialGrid
{
    double r_min = 1e-6;
    double r_max = 50.0;
    int count = 2049;
    GridSpacing spacing = GridSpacing::log;

    /// Throws InvalidParameters unless 0 < r_min < r_max and count >= 128.
    void check() const;
    std::vector<double> points() const;
};

/// A log grid covering the state's extent: r_min at 1e-6 of the decay length,
/// r_max a few decay lengths past the potential's range.
RadialGrid default_grid(const BoundState& state, int count = 4097);

struct SampledWavefunction
{
    RadialGrid grid;
    std::vector<double> r;
    std::vector<double> values; // R(r)
    int node_count = 0;
    double norm = 1.0;          // factor applied by normalize()
};

/// Sign changes of `values`, ignoring samples within 1e-12 max|v| of zero.
int count_nodes(const std::vector<double>& values);

/// R(r) = psi(s(r)) (divided by r when the mapped unknown is u = r R),
/// scaled by state.norm_constant.
double evaluate_at(const BoundState& state, double r);

/// Samples R on the grid. r_max is extended (x1.5 per step) until the last
/// 5% of the samples stay below 1e-10 of the peak.
SampledWavefunction evaluate(const BoundState& state, RadialGrid grid);

/// Composite Simpson rule for samples f on the points r of a grid.
double integrate(const RadialGrid& grid, const std::vector<double>& r, const std::vector<double>& f);

/// Scales so that int R^2 r^2 dr = 1. `norm` records the applied factor
/// accumulated over calls, so normalize(normalize(w)) leaves norm unchanged.
SampledWavefunction normalize(const SampledWavefunction& wf);

/// Energy-weighted alternative: int 2 (E - V(r)) R^2 r^2 dr = 1.
SampledWavefunction normalize_klein_gordon(const SampledWavefunction& wf, const BoundState& state);

struct OdeResidual
{
    double value = 0.0;
    bool degenerate = false; // the sampled function vanished identically
};

/// psi(s, 1 + c3 s)
using SFunction = std::function<double(double s, double one_plus_c3s)>;

/// Largest relative residual |psi'' + P psi' + Q psi| / (|psi''| + |P psi'| + |Q psi|)
/// of the normal-form equation at the s-images of the grid points, with
/// 5-point central differences. The step is rel_step / (degree+1) times the
/// local length: the distance to the singular points s = 0 and s = -1/c3,
/// capped by scale_hint.
OdeResidual ode_residual(const OdeParameters& params, const VariableTransform& transform, const SFunction& psi,
                         const RadialGrid& grid, double scale_hint, int degree, double rel_step = 1e-2);

OdeResidual ode_residual(const BoundState& state, const RadialGrid& grid, double rel_step = 1e-2);

} // namespace kgbound
