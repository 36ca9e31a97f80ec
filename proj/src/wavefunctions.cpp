#include "kgbound/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kgbound/error.hpp"

namespace kgbound {

namespace {

constexpr double node_dead_band = 1e-12;
constexpr double tail_fraction = 0.05;
constexpr double tail_target = 1e-10;
constexpr double tail_limit = 1e-6;

double simpson_uniform(const std::vector<double>& f, double h)
{
    std::size_t const n = f.size();
    if (n < 2) {
        return 0.0;
    }
    if (n == 2) {
        return 0.5 * h * (f[0] + f[1]);
    }
    std::size_t intervals = n - 1;
    double tail = 0.0;
    if (intervals % 2 == 1) {
        // 3/8 rule on the last three intervals.
        std::size_t const k = n - 4;
        tail = 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
        intervals -= 3;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 2 <= intervals; i += 2) {
        sum += f[i] + 4.0 * f[i + 1] + f[i + 2];
    }
    return sum * h / 3.0 + tail;
}

double tail_ratio(const std::vector<double>& values)
{
    double peak = 0.0;
    for (double v : values) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        return 0.0;
    }
    std::size_t const start = values.size() - std::max<std::size_t>(1, values.size() * tail_fraction);
    double tail = 0.0;
    for (std::size_t i = start; i < values.size(); ++i) {
        tail = std::max(tail, std::abs(values[i]));
    }
    return tail / peak;
}

SampledWavefunction rescaled(const SampledWavefunction& wf, double weight_integral)
{
    if (!(weight_integral > 0.0) || !std::isfinite(weight_integral)) {
        throw Error(ErrorCode::invalid_parameters, "wavefunction has no positive norm");
    }
    double const c = 1.0 / std::sqrt(weight_integral);
    SampledWavefunction out = wf;
    for (double& v : out.values) {
        v *= c;
    }
    out.norm = wf.norm * c;
    return out;
}

void require_decayed(const SampledWavefunction& wf)
{
    for (double v : wf.values) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::invalid_parameters, "wavefunction samples must be finite");
        }
    }
    double const ratio = tail_ratio(wf.values);
    if (ratio > tail_limit) {
        std::ostringstream msg;
        msg << "tail/peak = " << ratio << " at r_max = " << wf.grid.r_max;
        throw Error(ErrorCode::non_decaying_tail, msg.str());
    }
}

} // namespace

const char* to_string(GridSpacing g) noexcept
{
    return g == GridSpacing::uniform ? "uniform" : "log";
}

void RadialGrid::check() const
{
    if (!(std::isfinite(r_min) && std::isfinite(r_max) && r_min > 0.0 && r_min < r_max)) {
        throw Error(ErrorCode::invalid_parameters, "grid needs 0 < r_min < r_max");
    }
    if (count < 128) {
        throw Error(ErrorCode::invalid_parameters, "grid count must be at least 128");
    }
}

std::vector<double> RadialGrid::points() const
{
    check();
    std::vector<double> r(count);
    if (spacing == GridSpacing::uniform) {
        double const h = (r_max - r_min) / (count - 1);
        for (int i = 0; i < count; ++i) {
            r[i] = r_min + h * i;
        }
    } else {
        double const step = std::log(r_max / r_min) / (count - 1);
        for (int i = 0; i < count; ++i) {
            r[i] = r_min * std::exp(step * i);
        }
    }
    r.back() = r_max;
    return r;
}

RadialGrid default_grid(const BoundState& state, int count)
{
    auto const [lower, upper] = continuum_thresholds(state.spec, state.mass);
    double const v_inf = 0.5 * (lower + upper);
    double const gap = 0.5 * (upper - lower);
    double const de = state.energy - v_inf;
    double const kappa = std::sqrt(std::max(gap * gap - de * de, 1e-30));
    double range = 0.0;
    if (auto const* w = std::get_if<WoodsSaxon>(&state.spec)) {
        range = w->r_big;
    }
    RadialGrid g;
    g.r_min = 1e-6 / kappa;
    g.r_max = range + 40.0 / kappa;
    g.count = count;
    g.spacing = GridSpacing::log;
    return g;
}

int count_nodes(const std::vector<double>& values)
{
    double peak = 0.0;
    for (double v : values) {
        peak = std::max(peak, std::abs(v));
    }
    double const band = node_dead_band * peak;
    int nodes = 0;
    int last_sign = 0;
    for (double v : values) {
        if (std::abs(v) <= band) {
            continue;
        }
        int const sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) {
            ++nodes;
        }
        last_sign = sign;
    }
    return nodes;
}

double evaluate_at(const BoundState& state, double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw Error(ErrorCode::transform_domain_violation, "r must be positive and finite");
    }
    const VariableTransform& t = state.transform;
    SPoint const sp = t.at(r);
    if (std::isinf(sp.s) || std::isinf(sp.one_plus_c3s)) {
        return 0.0; // past the overflow point of s(r); the solution has decayed
    }
    double const lo = std::min(t.s_lo, t.s_hi);
    double const hi = std::max(t.s_lo, t.s_hi);
    double const slack = 1e-12 * std::max(1.0, std::abs(sp.s));
    if (!std::isfinite(sp.s) || sp.s < lo - slack || sp.s > hi + slack) {
        std::ostringstream msg;
        msg << "r = " << r << " maps to s = " << sp.s << " outside (" << t.s_lo << ", " << t.s_hi << ")";
        throw Error(ErrorCode::transform_domain_violation, msg.str());
    }
    double psi = state.norm_constant * factorized_solution(state.exponents, state.n, sp.s, sp.one_plus_c3s);
    if (t.uses_u_substitution) {
        psi /= r;
    }
    return psi;
}

SampledWavefunction evaluate(const BoundState& state, RadialGrid grid)
{
    grid.check();
    SampledWavefunction wf;
    for (int attempt = 0; attempt < 40; ++attempt) {
        wf.grid = grid;
        wf.r = grid.points();
        wf.values.resize(wf.r.size());
        for (std::size_t i = 0; i < wf.r.size(); ++i) {
            wf.values[i] = evaluate_at(state, wf.r[i]);
        }
        if (tail_ratio(wf.values) <= tail_target) {
            break;
        }
        grid.r_max *= 1.5;
    }
    wf.node_count = count_nodes(wf.values);
    wf.norm = 1.0;
    return wf;
}

double integrate(const RadialGrid& grid, const std::vector<double>& r, const std::vector<double>& f)
{
    if (grid.spacing == GridSpacing::uniform) {
        return simpson_uniform(f, (grid.r_max - grid.r_min) / (grid.count - 1));
    }
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        g[i] = f[i] * r[i];
    }
    return simpson_uniform(g, std::log(grid.r_max / grid.r_min) / (grid.count - 1));
}

SampledWavefunction normalize(const SampledWavefunction& wf)
{
    require_decayed(wf);
    std::vector<double> f(wf.values.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double const u = wf.values[i] * wf.r[i];
        f[i] = u * u;
    }
    return rescaled(wf, integrate(wf.grid, wf.r, f));
}

SampledWavefunction normalize_klein_gordon(const SampledWavefunction& wf, const BoundState& state)
{
    require_decayed(wf);
    std::vector<double> f(wf.values.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double const u = wf.values[i] * wf.r[i];
        f[i] = 2.0 * (state.energy - vector_potential(state.spec, wf.r[i])) * u * u;
    }
    return rescaled(wf, integrate(wf.grid, wf.r, f));
}

OdeResidual ode_residual(const OdeParameters& params, const VariableTransform& transform, const SFunction& psi,
                         const RadialGrid& grid, double scale_hint, int degree, double rel_step)
{
    OdeResidual out;
    bool any_nonzero = false;
    for (double r : grid.points()) {
        SPoint const sp = transform.at(r);
        if (!std::isfinite(sp.s) || !std::isfinite(sp.one_plus_c3s) || sp.s == 0.0 || sp.one_plus_c3s == 0.0) {
            continue;
        }
        double length = std::min(std::abs(sp.s), scale_hint);
        if (params.c3 != 0.0) {
            length = std::min(length, std::abs(sp.one_plus_c3s / params.c3));
        }
        double const h = rel_step * length / (degree + 1.0);
        double f[5];
        bool finite = true;
        for (int k = -2; k <= 2; ++k) {
            f[k + 2] = psi(sp.s + k * h, sp.one_plus_c3s + params.c3 * k * h);
            finite = finite && std::isfinite(f[k + 2]);
        }
        if (!finite) {
            continue;
        }
        double const level = std::max({std::abs(f[0]), std::abs(f[2]), std::abs(f[4])});
        if (level != 0.0) {
            any_nonzero = true;
        }
        if (level < 1e-250) {
            continue;
        }
        double const d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
        double const d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
        double const p = first_derivative_coefficient(params, sp.s, sp.one_plus_c3s) * d1;
        double const q = zeroth_order_coefficient(params, sp.s, sp.one_plus_c3s) * f[2];
        double const scale = std::abs(d2) + std::abs(p) + std::abs(q);
        if (scale == 0.0) {
            continue;
        }
        out.value = std::max(out.value, std::abs(d2 + p + q) / scale);
    }
    out.degenerate = !any_nonzero;
    return out;
}

OdeResidual ode_residual(const BoundState& state, const RadialGrid& grid, double rel_step)
{
    const ExponentSolution& e = state.exponents;
    double const hint = e.branch == Branch::laguerre ? 1.0 / e.z_scale : std::numeric_limits<double>::infinity();
    auto const psi = [&](double s, double one_plus_c3s) {
        return factorized_solution(e, state.n, s, one_plus_c3s);
    };
    return ode_residual(state.params, state.transform, psi, grid, hint, state.n, rel_step);
}

} // namespace kgbound
