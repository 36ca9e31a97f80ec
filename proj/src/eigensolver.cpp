#include "kgbound/eigensolver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <thread>

namespace kgbound {

namespace {

bool is_domain_error(ErrorCode code)
{
    return code == ErrorCode::negative_discriminant || code == ErrorCode::nonpositive_scale;
}

std::optional<double> try_residual(const PotentialSpec& spec, double m, int n, int ell, double energy)
{
    try {
        return evaluate_residual(spec, m, n, ell, energy).residual.value;
    } catch (const Error& e) {
        if (is_domain_error(e.code())) {
            return std::nullopt;
        }
        throw;
    }
}

void validate_window(const PotentialSpec& spec, double m, const EnergyWindow& w, double tol)
{
    auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_window, what); };
    if (!(std::isfinite(w.lo) && std::isfinite(w.hi) && w.lo < w.hi)) {
        fail("window needs finite lo < hi");
    }
    if (w.scan_points < 64) {
        fail("scan_points must be at least 64");
    }
    if (!(tol > 0.0)) {
        fail("tolerance must be positive");
    }
    auto const [lower, upper] = continuum_thresholds(spec, m);
    double const slack = 1e-12 * m;
    if (w.lo < lower - slack || w.hi > upper + slack) {
        std::ostringstream msg;
        msg << "window [" << w.lo << ", " << w.hi << "] leaves the bound-state range [" << lower << ", " << upper
            << "]";
        fail(msg.str());
    }
}

struct FoundRoot
{
    double energy;
    Interval bracket;
};

// Bisection on a sign change of the residual between a and b.
FoundRoot bisect(const PotentialSpec& spec, double m, int n, int ell, double a, double fa, double b, double tol)
{
    double const width = tol * m;
    while (b - a > width) {
        double const mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) {
            break;
        }
        auto const fm = try_residual(spec, m, n, ell, mid);
        if (!fm) {
            std::ostringstream msg;
            msg << "exponents became complex at E = " << mid << " inside bracket [" << a << ", " << b << "]";
            throw Error(ErrorCode::discriminant_lost_mid_bracket, msg.str());
        }
        if (*fm == 0.0) {
            return {mid, {mid, mid}};
        }
        if ((*fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = *fm;
        } else {
            b = mid;
        }
    }
    return {0.5 * (a + b), {a, b}};
}

struct Sample
{
    double energy;
    std::optional<double> value;
};

// Levels can crowd against the edge of the region with real exponents (for
// Coulomb they accumulate at E = m), closer than one scan cell. Locates the
// edge between grid[valid] and grid[invalid] and samples geometrically
// towards it, 8 points per halving of the distance.
std::vector<Sample> refine_edge(const PotentialSpec& spec, double m, int n, int ell, int valid, int invalid,
                                const std::vector<double>& grid, double tol)
{
    double v = grid[valid];
    double x = grid[invalid];
    double const width = tol * m;
    while (std::abs(x - v) > width) {
        double const mid = 0.5 * (v + x);
        if (mid == v || mid == x) {
            break;
        }
        (try_residual(spec, m, n, ell, mid) ? v : x) = mid;
    }
    std::vector<Sample> out;
    double const span = grid[valid] - v;
    if (std::abs(span) <= width) {
        return out;
    }
    for (int k = 1;; ++k) {
        double const d = span * std::exp2(-k / 8.0);
        if (std::abs(d) < width) {
            break;
        }
        out.push_back({v + d, try_residual(spec, m, n, ell, v + d)});
    }
    out.push_back({v, try_residual(spec, m, n, ell, v)});
    return out;
}

bool on_physical_branch(const ResidualEvaluation& ev)
{
    if (ev.exponents.branch != Branch::jacobi || !ev.transform.infinity_in_domain()) {
        return true;
    }
    auto const roots = jacobi_x_roots(ev.params, ev.residual.n);
    if (!roots) {
        return false;
    }
    double const x = ev.exponents.q - ev.exponents.p;
    return std::abs(x - roots->lower) <= std::abs(x - roots->upper);
}

} // namespace

const char* to_string(EnergySign s) noexcept
{
    return s == EnergySign::particle ? "particle" : "antiparticle";
}

EnergyWindow default_window(const PotentialSpec& spec, double m, EnergySign sign, int scan_points)
{
    auto const [lower, upper] = continuum_thresholds(spec, m);
    return {lower, upper, sign, scan_points};
}

double coulomb_energy(double z_alpha, double m, int n, int ell, EnergySign sign)
{
    if (n < 0 || ell < 0) {
        throw Error(ErrorCode::invalid_parameters, "quantum numbers must be non-negative");
    }
    double const half = ell + 0.5;
    double const disc = half * half - z_alpha * z_alpha;
    if (disc < 0.0) {
        throw Error(ErrorCode::supercritical_coupling, "(l + 1/2)^2 < (Z alpha)^2");
    }
    double const denom = n + 0.5 + std::sqrt(disc);
    double const e = m / std::sqrt(1.0 + z_alpha * z_alpha / (denom * denom));
    return sign == EnergySign::particle ? e : -e;
}

ResidualEvaluation evaluate_residual(const PotentialSpec& spec, double m, int n, int ell, double energy)
{
    MappedProblem mapped = map_potential(spec, m, energy, ell);
    ExponentSolution exps = solve_exponents(mapped.params, mapped.transform.physical_roots());
    QuantizationResidual res = quantization_residual(mapped.params, exps, n);
    return {mapped.params, mapped.transform, exps, res};
}

BoundState trial_state(const PotentialSpec& spec, double m, int n, int ell, double energy)
{
    ResidualEvaluation const ev = evaluate_residual(spec, m, n, ell, energy);
    BoundState state;
    state.n = n;
    state.ell = ell;
    state.energy = energy;
    state.mass = m;
    state.spec = spec;
    state.params = ev.params;
    state.exponents = ev.exponents;
    state.transform = ev.transform;
    state.residual = ev.residual.value;
    state.bracket = {energy, energy};
    return state;
}

BoundState solve_energy(const PotentialSpec& spec, double m, int n, int ell, const EnergyWindow& window, double tol)
{
    validate(spec, m);
    if (n < 0 || ell < 0) {
        throw Error(ErrorCode::invalid_parameters, "quantum numbers must be non-negative");
    }
    validate_window(spec, m, window, tol);

    int const count = window.scan_points;
    std::vector<std::optional<double>> values(count);
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) {
        grid[i] = window.lo + (window.hi - window.lo) * i / (count - 1);
        values[i] = try_residual(spec, m, n, ell, grid[i]);
    }

    std::vector<Interval> excised;
    for (int i = 0; i < count;) {
        if (values[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < count && !values[j + 1]) {
            ++j;
        }
        excised.push_back({grid[i], grid[j]});
        i = j + 1;
    }

    std::vector<Sample> samples;
    for (int i = 0; i < count; ++i) {
        samples.push_back({grid[i], values[i]});
    }
    for (int i = 0; i + 1 < count; ++i) {
        if (values[i].has_value() != values[i + 1].has_value()) {
            auto extra = refine_edge(spec, m, n, ell, values[i] ? i : i + 1, values[i] ? i + 1 : i, grid, tol);
            samples.insert(samples.end(), extra.begin(), extra.end());
        }
    }
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.energy < b.energy; });

    std::vector<FoundRoot> candidates;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        auto const& a = samples[i];
        auto const& b = samples[i + 1];
        if (!a.value || !b.value || !(a.energy < b.energy)) {
            continue;
        }
        double const fa = *a.value;
        double const fb = *b.value;
        if (fa == 0.0 && i > 0) {
            candidates.push_back({a.energy, {a.energy, a.energy}});
        } else if (fa != 0.0 && fb != 0.0 && (fa > 0.0) != (fb > 0.0)) {
            candidates.push_back(bisect(spec, m, n, ell, a.energy, fa, b.energy, tol));
        }
    }

    std::vector<FoundRoot> accepted;
    std::vector<double> rejected;
    for (const FoundRoot& c : candidates) {
        if (on_physical_branch(evaluate_residual(spec, m, n, ell, c.energy))) {
            accepted.push_back(c);
        } else {
            rejected.push_back(c.energy);
        }
    }
    if (accepted.empty()) {
        std::ostringstream msg;
        msg << "no physical root for n = " << n << ", l = " << ell << " in [" << window.lo << ", " << window.hi
            << "]";
        if (!rejected.empty()) {
            msg << " (" << rejected.size() << " root(s) on the unphysical branch)";
        }
        throw Error(ErrorCode::no_root_in_window, msg.str());
    }

    auto const by_energy = [](const FoundRoot& a, const FoundRoot& b) { return a.energy < b.energy; };
    std::sort(accepted.begin(), accepted.end(), by_energy);
    FoundRoot const chosen = window.sign == EnergySign::particle ? accepted.back() : accepted.front();

    BoundState state = trial_state(spec, m, n, ell, chosen.energy);
    state.bracket = chosen.bracket;
    state.excised = std::move(excised);
    state.rejected_roots = std::move(rejected);
    for (const FoundRoot& r : accepted) {
        if (r.energy != chosen.energy) {
            state.other_roots.push_back(r.energy);
        }
    }
    return state;
}

Spectrum spectrum(const PotentialSpec& spec, double m, int n_max, int ell_max, const EnergyWindow& window,
                  double tol, int threads)
{
    if (n_max < 0 || ell_max < 0) {
        throw Error(ErrorCode::invalid_parameters, "n_max and ell_max must be non-negative");
    }
    validate(spec, m);
    validate_window(spec, m, window, tol);

    struct Slot
    {
        int n;
        int ell;
        std::optional<BoundState> state;
        std::optional<MissingState> missing;
    };
    std::vector<Slot> slots;
    for (int ell = 0; ell <= ell_max; ++ell) {
        for (int n = 0; n <= n_max; ++n) {
            slots.push_back({n, ell, std::nullopt, std::nullopt});
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < slots.size(); i = next++) {
            Slot& slot = slots[i];
            try {
                slot.state = solve_energy(spec, m, slot.n, slot.ell, window, tol);
            } catch (const Error& e) {
                slot.missing = MissingState{slot.n, slot.ell, e.code(), e.what()};
            }
        }
    };

    int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(slots.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }

    Spectrum out;
    for (Slot& slot : slots) {
        if (slot.state) {
            out.states.push_back(std::move(*slot.state));
        } else if (slot.missing) {
            out.missing.push_back(std::move(*slot.missing));
        }
    }
    return out;
}

} // namespace kgbound
