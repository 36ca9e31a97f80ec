#include "kgbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "kgbound/error.hpp"
#include "kgbound/io.hpp"
#include "kgbound/wavefunctions.hpp"

namespace kgbound::oracle {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double angular_weight(const EffectiveProblem& p)
{
    if (auto const* nc = std::get_if<NonCentralRadial>(&p.spec)) {
        return nc->lambda_sep;
    }
    return static_cast<double>(p.ell) * (p.ell + 1);
}

std::pair<double, double> far_field(const EffectiveProblem& p)
{
    auto const [lower, upper] = continuum_thresholds(p.spec, p.mass);
    return {0.5 * (lower + upper), 0.5 * (upper - lower)};
}

int count_sign_changes(double a, double b)
{
    return (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0) ? 1 : 0;
}

// Cut the divergent tail: walk back from the end while |u| keeps shrinking.
void truncate_tail(Integration& sol)
{
    std::size_t end = sol.u.size();
    while (end > 2 && std::abs(sol.u[end - 2]) < std::abs(sol.u[end - 1])) {
        --end;
    }
    sol.r.resize(end);
    sol.u.resize(end);
}

} // namespace

const char* to_string(Centrifugal c) noexcept
{
    return c == Centrifugal::exact ? "exact" : "approximate";
}

EffectiveProblem make_problem(const PotentialSpec& spec, double m, int ell, Centrifugal centrifugal)
{
    validate(spec, m);
    if (ell < 0) {
        throw Error(ErrorCode::invalid_parameters, "angular momentum must be non-negative");
    }
    return {spec, m, ell, centrifugal};
}

double EffectiveProblem::centrifugal_term(double r) const
{
    double const w = angular_weight(*this);
    if (w == 0.0) {
        return 0.0;
    }
    if (centrifugal == Centrifugal::approximate) {
        if (auto const* h = std::get_if<Hulthen>(&spec)) {
            return w * centrifugal_hulthen(h->delta, r);
        }
        if (auto const* ws = std::get_if<WoodsSaxon>(&spec)) {
            return w * centrifugal_pekeris(*ws, r);
        }
        if (auto const* pt = std::get_if<PoschlTeller>(&spec)) {
            return w * centrifugal_sinh(pt->alpha_pt, r);
        }
    }
    return w / (r * r);
}

double EffectiveProblem::w(double r, double energy) const
{
    double const mass_term = mass + scalar_potential(spec, r);
    double const energy_term = energy - vector_potential(spec, r);
    return mass_term * mass_term - energy_term * energy_term + centrifugal_term(r);
}

double EffectiveProblem::singular_c2(double energy) const
{
    double const base = (centrifugal == Centrifugal::approximate && std::holds_alternative<WoodsSaxon>(spec))
                            ? 0.0
                            : angular_weight(*this);
    double const g = energy + mass;
    return base + std::visit(overloaded{
                                 [](const Coulomb& c) { return -c.z_alpha * c.z_alpha; },
                                 [g](const Mie& p) { return g * p.v0 * p.a * p.a; },
                                 [g](const KratzerFues& p) { return 2.0 * g * p.ve * p.re * p.re; },
                                 [](const NonCentralRadial&) { return 0.0; },
                                 [](const Hulthen& p) {
                                     return p.q_def == 1.0 ? (p.s0 * p.s0 - p.v0 * p.v0) / (p.delta * p.delta)
                                                           : 0.0;
                                 },
                                 [](const WoodsSaxon&) { return 0.0; },
                                 [g](const PoschlTeller& p) {
                                     return 2.0 * g * p.v2 / (p.alpha_pt * p.alpha_pt);
                                 },
                             },
                             spec);
}

double EffectiveProblem::singular_c1(double energy) const
{
    double const g = energy + mass;
    double const m = mass;
    return std::visit(overloaded{
                          [energy](const Coulomb& c) { return -2.0 * energy * c.z_alpha; },
                          [g](const Mie& p) { return -2.0 * g * p.v0 * p.a; },
                          [g](const KratzerFues& p) { return -4.0 * g * p.ve * p.re; },
                          [g](const NonCentralRadial& p) { return 2.0 * g * p.alpha_c; },
                          [m, energy](const Hulthen& p) {
                              if (p.q_def != 1.0) {
                                  return 0.0;
                              }
                              return -(p.s0 * p.s0 - p.v0 * p.v0) / p.delta -
                                     2.0 * (m * p.s0 + energy * p.v0) / p.delta;
                          },
                          [](const WoodsSaxon&) { return 0.0; },
                          [](const PoschlTeller&) { return 0.0; },
                      },
                      spec);
}

double EffectiveProblem::indicial_exponent(double energy) const
{
    double const disc = 0.25 + singular_c2(energy);
    if (disc < 0.0) {
        throw Error(ErrorCode::supercritical_coupling, "1/r^2 attraction too strong for a regular solution");
    }
    return 0.5 + std::sqrt(disc);
}

double EffectiveProblem::length_scale() const
{
    return std::visit(overloaded{
                          [this](const Coulomb&) { return 1.0 / mass; },
                          [](const Mie& p) { return p.a; },
                          [](const KratzerFues& p) { return p.re; },
                          [this](const NonCentralRadial&) { return 1.0 / mass; },
                          [](const Hulthen& p) { return 1.0 / p.delta; },
                          [](const WoodsSaxon& p) { return p.a; },
                          [](const PoschlTeller& p) { return 1.0 / p.alpha_pt; },
                      },
                      spec);
}

double EffectiveProblem::decay_constant(double energy) const
{
    auto const [v_inf, gap] = far_field(*this);
    double const de = energy - v_inf;
    return std::sqrt(std::max(0.0, gap * gap - de * de));
}

double start_radius(const EffectiveProblem& problem)
{
    return 1e-6 * std::min(problem.length_scale(), 1.0 / problem.mass);
}

double shooting_radius(const EffectiveProblem& problem, double energy, double decay_lengths)
{
    double const kappa = problem.decay_constant(energy);
    if (!(kappa > 0.0)) {
        throw Error(ErrorCode::invalid_window, "energy at or beyond the continuum threshold");
    }
    double const length = problem.length_scale();
    double r_extent = length;
    if (auto const* ws = std::get_if<WoodsSaxon>(&problem.spec)) {
        r_extent = ws->r_big + ws->a;
    }
    double const limit =
        1e3 * r_extent + 100.0 / kappa + 10.0 * std::abs(problem.singular_c1(energy)) / (kappa * kappa);
    double turning = 0.0;
    for (double r = start_radius(problem); r < limit; r *= 1.01) {
        if (problem.w(r, energy) < 0.0) {
            turning = r;
        }
    }
    return std::max(turning, r_extent) + decay_lengths / kappa;
}

Integration integrate_u(const EffectiveProblem& problem, double energy, double r_min, double r_max,
                        const StepControl& steps)
{
    if (!(r_min > 0.0 && r_min < r_max) || !std::isfinite(r_max)) {
        throw Error(ErrorCode::invalid_parameters, "integration needs 0 < r_min < r_max");
    }
    double const sigma = problem.indicial_exponent(energy);
    double const a1 = problem.singular_c1(energy) / (2.0 * sigma);

    Integration out;
    double r = r_min;
    // u = r^sigma (1 + a1 r), scaled by r_min^-sigma.
    double u = 1.0 + a1 * r;
    double du = (sigma + (sigma + 1.0) * a1 * r) / r;
    out.r.push_back(r);
    out.u.push_back(u);

    auto const w = [&](double x) { return problem.w(x, energy); };
    while (r < r_max) {
        double const wr = w(r);
        double const eps = 1e-4;
        double const slope = (w(r * (1.0 + eps)) - w(r * (1.0 - eps))) / (2.0 * eps * r);
        double h = std::min(steps.rho * r, steps.h_max);
        if (wr != 0.0) {
            h = std::min(h, steps.eta / std::sqrt(std::abs(wr)));
        }
        if (slope != 0.0) {
            h = std::min(h, 2.0 * steps.eta / std::cbrt(std::abs(slope)));
        }
        if (r + h > r_max || r + 1.0001 * h >= r_max) {
            h = r_max - r;
        }

        double const w_mid = w(r + 0.5 * h);
        double const w_end = w(r + h);
        double const k1u = du;
        double const k1d = wr * u;
        double const k2u = du + 0.5 * h * k1d;
        double const k2d = w_mid * (u + 0.5 * h * k1u);
        double const k3u = du + 0.5 * h * k2d;
        double const k3d = w_mid * (u + 0.5 * h * k2u);
        double const k4u = du + h * k3d;
        double const k4d = w_end * (u + h * k3u);
        double const u_next = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        du += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        r = (r + h >= r_max) ? r_max : r + h;

        out.node_count += count_sign_changes(u, u_next);
        u = u_next;
        if (std::abs(u) > overflow_threshold) {
            double const scale = std::abs(u);
            for (double& v : out.u) {
                v /= scale;
            }
            u /= scale;
            du /= scale;
            out.rescale_points.push_back(r);
        }
        out.r.push_back(r);
        out.u.push_back(u);
    }
    return out;
}

ShootResult shoot(const EffectiveProblem& problem, int n, const EnergyWindow& window, double tol,
                  const StepControl& steps)
{
    if (n < 0) {
        throw Error(ErrorCode::invalid_parameters, "n must be non-negative");
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::invalid_parameters, "tolerance must be positive");
    }
    auto const [v_inf, gap] = far_field(problem);
    double const top = v_inf + gap;
    double const bottom = v_inf - gap;
    double const hi = std::min(window.hi, top);
    double const lo = std::max(window.lo, bottom);
    if (!(lo < hi)) {
        std::ostringstream msg;
        msg << "empty window [" << window.lo << ", " << window.hi << "]";
        throw Error(ErrorCode::no_transition_in_window, msg.str());
    }

    double const r_min = start_radius(problem);
    auto const nodes_at = [&](double e) {
        return integrate_u(problem, e, r_min, shooting_radius(problem, e), steps).node_count;
    };

    // Scan in theta with E = v_inf + gap cos(theta): dense near the thresholds
    // where levels accumulate.
    double const theta_hi = std::acos(std::clamp((hi - v_inf) / gap, -1.0, 1.0));
    double const theta_lo = std::acos(std::clamp((lo - v_inf) / gap, -1.0, 1.0));
    int const count = std::max(window.scan_points, 2);
    double const dtheta = (theta_lo - theta_hi) / (count - 1);
    auto const energy_at = [&](int j) {
        double theta = theta_hi + dtheta * j;
        if (j == 0 && hi >= top) {
            theta += 0.25 * dtheta;
        }
        if (j == count - 1 && lo <= bottom) {
            theta -= 0.25 * dtheta;
        }
        return v_inf + gap * std::cos(theta);
    };

    double e_prev = energy_at(0);
    int const top_nodes = nodes_at(e_prev);
    if (top_nodes <= n) {
        std::ostringstream msg;
        msg << "only " << top_nodes << " node(s) at the top of the window, n = " << n;
        throw Error(ErrorCode::no_transition_in_window, msg.str());
    }
    double b_lo = 0.0;
    double b_hi = 0.0;
    bool found = false;
    for (int j = 1; j < count; ++j) {
        double const e = energy_at(j);
        if (nodes_at(e) <= n) {
            b_lo = e;
            b_hi = e_prev;
            found = true;
            break;
        }
        e_prev = e;
    }
    if (!found) {
        std::ostringstream msg;
        msg << "node count stays above " << n << " across [" << lo << ", " << hi << "]";
        throw Error(ErrorCode::no_transition_in_window, msg.str());
    }

    double const width = tol * problem.mass;
    while (b_hi - b_lo > width) {
        double const mid = 0.5 * (b_lo + b_hi);
        if (mid <= b_lo || mid >= b_hi) {
            break;
        }
        if (nodes_at(mid) > n) {
            b_hi = mid;
        } else {
            b_lo = mid;
        }
    }

    ShootResult result;
    result.problem = problem;
    result.n = n;
    result.energy = 0.5 * (b_lo + b_hi);
    result.bracket_lo = b_lo;
    result.bracket_hi = b_hi;
    // The lower bracket end has no spurious tail node, only a same-sign divergence.
    result.solution = integrate_u(problem, b_lo, r_min, shooting_radius(problem, b_lo), steps);
    truncate_tail(result.solution);
    result.solution.node_count = 0;
    for (std::size_t i = 1; i < result.solution.u.size(); ++i) {
        result.solution.node_count += count_sign_changes(result.solution.u[i - 1], result.solution.u[i]);
    }
    return result;
}

double overlap(const BoundState& algebraic, const Integration& numeric)
{
    double cross = 0.0;
    double norm_a = 0.0;
    double norm_n = 0.0;
    std::vector<double> ua(numeric.r.size());
    for (std::size_t i = 0; i < numeric.r.size(); ++i) {
        ua[i] = evaluate_at(algebraic, numeric.r[i]) * numeric.r[i];
    }
    for (std::size_t i = 1; i < numeric.r.size(); ++i) {
        double const h = 0.5 * (numeric.r[i] - numeric.r[i - 1]);
        cross += h * (ua[i] * numeric.u[i] + ua[i - 1] * numeric.u[i - 1]);
        norm_a += h * (ua[i] * ua[i] + ua[i - 1] * ua[i - 1]);
        norm_n += h * (numeric.u[i] * numeric.u[i] + numeric.u[i - 1] * numeric.u[i - 1]);
    }
    if (!(norm_a > 0.0 && norm_n > 0.0)) {
        return 0.0;
    }
    return std::abs(cross) / std::sqrt(norm_a * norm_n);
}

Comparison compare(const BoundState& algebraic, const ShootResult& numeric, const CompareOptions& options)
{
    const EffectiveProblem& p = numeric.problem;
    if (!(p.spec == algebraic.spec) || p.ell != algebraic.ell || numeric.n != algebraic.n ||
        p.mass != algebraic.mass) {
        std::ostringstream msg;
        msg << "algebraic (" << potential_name(algebraic.spec) << ", n=" << algebraic.n << ", l=" << algebraic.ell
            << ") vs numeric (" << potential_name(p.spec) << ", n=" << numeric.n << ", l=" << p.ell << ")";
        throw Error(ErrorCode::mismatched_problem, msg.str());
    }
    Comparison c;
    c.case_id = potential_name(algebraic.spec);
    c.n = algebraic.n;
    c.ell = algebraic.ell;
    c.centrifugal = p.centrifugal;
    c.same_treatment =
        p.centrifugal == Centrifugal::approximate || !uses_centrifugal_approximation(p.spec) || p.ell == 0;
    c.e_algebraic = algebraic.energy;
    c.e_numeric = numeric.energy;
    c.abs_diff = std::abs(algebraic.energy - numeric.energy);
    c.rel_diff = c.abs_diff / p.mass;
    c.overlap = overlap(algebraic, numeric.solution);
    c.tolerance = options.energy_tolerance * p.mass;
    c.energy_pass = c.abs_diff <= c.tolerance;
    c.overlap_pass = c.overlap >= options.overlap_threshold;
    c.pass = c.energy_pass && c.overlap_pass;
    return c;
}

void write_goldens(const std::filesystem::path& path, const std::vector<GoldenEntry>& entries)
{
    std::string text = "case_id,n,ell,energy,tolerance\n";
    for (const GoldenEntry& e : entries) {
        text += e.case_id + "," + std::to_string(e.n) + "," + std::to_string(e.ell) + "," + format_double(e.energy) +
                "," + format_double(e.tolerance) + "\n";
    }
    write_then_rename(path, text);
}

std::vector<GoldenEntry> read_goldens(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open " + path.string());
    }
    std::vector<GoldenEntry> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line_no == 1) {
            continue;
        }
        std::istringstream row(line);
        GoldenEntry e;
        std::string n, ell, energy, tol;
        if (!std::getline(row, e.case_id, ',') || !std::getline(row, n, ',') || !std::getline(row, ell, ',') ||
            !std::getline(row, energy, ',') || !std::getline(row, tol)) {
            throw Error(ErrorCode::config_error, path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
        try {
            e.n = std::stoi(n);
            e.ell = std::stoi(ell);
            e.energy = std::stod(energy);
            e.tolerance = std::stod(tol);
        } catch (const std::exception&) {
            throw Error(ErrorCode::config_error, path.string() + ":" + std::to_string(line_no) + ": bad number");
        }
        out.push_back(e);
    }
    return out;
}

} // namespace kgbound::oracle
