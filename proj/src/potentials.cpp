#include "kgbound/potentials.hpp"

#include <cmath>
#include <limits>

#include "kgbound/error.hpp"

namespace kgbound {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double infinity = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw Error(ErrorCode::invalid_parameters, what);
    }
}

bool all_finite(std::initializer_list<double> xs)
{
    for (double x : xs) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

double hulthen_shape(const Hulthen& h, double r)
{
    double const y = std::exp(-h.delta * r);
    double const denom = h.q_def == 1.0 ? -std::expm1(-h.delta * r) : 1.0 - h.q_def * y;
    return y / denom;
}

double woods_saxon_shape(const WoodsSaxon& w, double r)
{
    return 1.0 / (1.0 + w.q_def * std::exp((r - w.r_big) / w.a));
}

double poschl_teller_shape(const PoschlTeller& p, double r)
{
    double const c = std::cosh(p.alpha_pt * r);
    double const s = std::sinh(p.alpha_pt * r);
    return -p.v1 / (c * c) + p.v2 / (s * s);
}

double centrifugal_weight(int ell)
{
    return static_cast<double>(ell) * (ell + 1);
}

} // namespace

std::string potential_name(const PotentialSpec& spec)
{
    return std::visit(overloaded{
                          [](const Coulomb&) { return "coulomb"; },
                          [](const Mie&) { return "mie"; },
                          [](const KratzerFues&) { return "kratzer_fues"; },
                          [](const NonCentralRadial&) { return "non_central"; },
                          [](const Hulthen&) { return "hulthen"; },
                          [](const WoodsSaxon&) { return "woods_saxon"; },
                          [](const PoschlTeller&) { return "poschl_teller"; },
                      },
                      spec);
}

void validate(const PotentialSpec& spec, double m)
{
    require(std::isfinite(m) && m > 0.0, "mass must be positive");
    std::visit(overloaded{
                   [](const Coulomb& c) {
                       require(all_finite({c.z_alpha, c.scalar_z_alpha}), "coulomb parameters must be finite");
                       if (c.scalar_z_alpha != 0.0) {
                           throw Error(ErrorCode::unsupported_coupling,
                                       "coulomb with a scalar term is not implemented");
                       }
                   },
                   [](const Mie& p) {
                       require(all_finite({p.v0, p.a}), "mie parameters must be finite");
                       require(p.a > 0.0, "mie length a must be positive");
                   },
                   [](const KratzerFues& p) {
                       require(all_finite({p.ve, p.re}), "kratzer parameters must be finite");
                       require(p.re > 0.0, "kratzer equilibrium distance re must be positive");
                   },
                   [](const NonCentralRadial& p) {
                       require(all_finite({p.alpha_c, p.lambda_sep}), "non-central parameters must be finite");
                   },
                   [](const Hulthen& p) {
                       require(all_finite({p.v0, p.s0, p.delta, p.q_def}), "hulthen parameters must be finite");
                       require(p.delta > 0.0, "hulthen screening delta must be positive");
                       require(p.q_def != 0.0, "hulthen q_def: q != 0 is the deformation parameter");
                       require(p.q_def <= 1.0, "hulthen q_def > 1 puts a pole at positive r");
                   },
                   [](const WoodsSaxon& p) {
                       require(all_finite({p.v0, p.s0, p.a, p.r_big, p.q_def}),
                               "woods-saxon parameters must be finite");
                       require(p.a > 0.0 && p.r_big > 0.0, "woods-saxon a and R must be positive");
                       require(p.q_def > 0.0, "woods-saxon q_def must be positive (q <= 0 gives a pole or no well)");
                       if (p.pekeris) {
                           require(all_finite({p.pekeris->d0, p.pekeris->d1, p.pekeris->d2}),
                                   "pekeris coefficients must be finite");
                       }
                   },
                   [](const PoschlTeller& p) {
                       require(all_finite({p.v1, p.v2, p.alpha_pt}), "poschl-teller parameters must be finite");
                       require(p.alpha_pt > 0.0, "poschl-teller alpha must be positive");
                       require(p.v2 >= 0.0, "poschl-teller v2 must be non-negative for regularity at the origin");
                   },
               },
               spec);
}

bool uses_centrifugal_approximation(const PotentialSpec& spec)
{
    return std::holds_alternative<Hulthen>(spec) || std::holds_alternative<WoodsSaxon>(spec) ||
           std::holds_alternative<PoschlTeller>(spec);
}

double vector_potential(const PotentialSpec& spec, double r)
{
    return std::visit(overloaded{
                          [r](const Coulomb& c) { return -c.z_alpha / r; },
                          [r](const Mie& p) {
                              double const x = p.a / r;
                              return p.v0 * (0.5 * x * x - x);
                          },
                          [r](const KratzerFues& p) {
                              double const x = (r - p.re) / r;
                              return p.ve * x * x;
                          },
                          [r](const NonCentralRadial& p) { return p.alpha_c / r; },
                          [r](const Hulthen& p) { return -p.v0 * hulthen_shape(p, r); },
                          [r](const WoodsSaxon& p) { return -p.v0 * woods_saxon_shape(p, r); },
                          [r](const PoschlTeller& p) { return poschl_teller_shape(p, r); },
                      },
                      spec);
}

double scalar_potential(const PotentialSpec& spec, double r)
{
    return std::visit(overloaded{
                          [r](const Coulomb& c) { return -c.scalar_z_alpha / r; },
                          [r](const Hulthen& p) { return -p.s0 * hulthen_shape(p, r); },
                          [r](const WoodsSaxon& p) { return -p.s0 * woods_saxon_shape(p, r); },
                          [&spec, r](const auto&) { return vector_potential(spec, r); },
                      },
                      spec);
}

std::pair<double, double> continuum_thresholds(const PotentialSpec& spec, double m)
{
    double v_inf = 0.0;
    double s_inf = 0.0;
    if (auto const* k = std::get_if<KratzerFues>(&spec)) {
        v_inf = k->ve;
        s_inf = k->ve;
    }
    double const gap = std::abs(m + s_inf);
    return {v_inf - gap, v_inf + gap};
}

const char* to_string(TransformKind k) noexcept
{
    switch (k) {
    case TransformKind::identity_r:
        return "identity_r";
    case TransformKind::hulthen_s:
        return "hulthen_s";
    case TransformKind::woods_saxon_s:
        return "woods_saxon_s";
    case TransformKind::cosh_squared:
        return "cosh_squared";
    }
    return "unknown";
}

SPoint VariableTransform::at(double r) const
{
    switch (kind) {
    case TransformKind::identity_r:
        return {r, 1.0};
    case TransformKind::hulthen_s: {
        double const y = std::exp(-rate * r);
        double const denom = q_def == 1.0 ? -std::expm1(-rate * r) : 1.0 - q_def * y;
        return {1.0 / denom, -q_def * y / denom};
    }
    case TransformKind::woods_saxon_s: {
        double const t = q_def * std::exp(rate * (r - shift));
        return {1.0 / (1.0 + t), 1.0 / (1.0 + 1.0 / t)};
    }
    case TransformKind::cosh_squared: {
        double const c = std::cosh(rate * r);
        double const s = std::sinh(rate * r);
        return {c * c, -s * s};
    }
    }
    return {r, 1.0};
}

RootChoice VariableTransform::physical_roots() const
{
    switch (kind) {
    case TransformKind::identity_r:
        return {Root::plus, Root::plus};
    case TransformKind::woods_saxon_s:
        // s -> 0 is r -> inf (s^q must decay); (1-s)^{-p} must vanish toward s -> 1.
        return {Root::plus, Root::minus};
    case TransformKind::hulthen_s:
    case TransformKind::cosh_squared:
        // s = 0 lies outside the domain; the factor at s = 1 carries the decay
        // (Hulthen) or the origin regularity (cosh^2), both need p < 0.
        return {Root::minus, Root::minus};
    }
    return {};
}

bool VariableTransform::infinity_in_domain() const
{
    return kind == TransformKind::cosh_squared || (kind == TransformKind::hulthen_s && q_def == 1.0);
}

VariableTransform make_transform(const PotentialSpec& spec)
{
    return std::visit(overloaded{
                          [](const Hulthen& p) {
                              VariableTransform t;
                              t.kind = TransformKind::hulthen_s;
                              t.rate = p.delta;
                              t.q_def = p.q_def;
                              t.uses_u_substitution = true;
                              if (p.q_def == 1.0) {
                                  t.s_lo = 1.0;
                                  t.s_hi = infinity;
                              } else if (p.q_def > 0.0) {
                                  t.s_lo = 1.0;
                                  t.s_hi = 1.0 / (1.0 - p.q_def);
                              } else {
                                  t.s_lo = 1.0 / (1.0 - p.q_def);
                                  t.s_hi = 1.0;
                              }
                              return t;
                          },
                          [](const WoodsSaxon& p) {
                              VariableTransform t;
                              t.kind = TransformKind::woods_saxon_s;
                              t.rate = 1.0 / p.a;
                              t.shift = p.r_big;
                              t.q_def = p.q_def;
                              t.uses_u_substitution = true;
                              t.s_lo = 0.0;
                              t.s_hi = 1.0 / (1.0 + p.q_def * std::exp(-p.r_big / p.a));
                              return t;
                          },
                          [](const PoschlTeller& p) {
                              VariableTransform t;
                              t.kind = TransformKind::cosh_squared;
                              t.rate = p.alpha_pt;
                              t.uses_u_substitution = true;
                              t.s_lo = 1.0;
                              t.s_hi = infinity;
                              return t;
                          },
                          [](const auto&) {
                              VariableTransform t;
                              t.kind = TransformKind::identity_r;
                              t.s_lo = 0.0;
                              t.s_hi = infinity;
                              return t;
                          },
                      },
                      spec);
}

namespace {

OdeParameters map_s_wave(const PotentialSpec& spec, double m, double e)
{
    double const k2 = m * m - e * e;
    return std::visit(
        overloaded{
            [&](const Coulomb& c) {
                return OdeParameters{2.0, 0.0, 0.0, k2, 2.0 * e * c.z_alpha, -c.z_alpha * c.z_alpha};
            },
            [&](const Mie& p) {
                double const g = (e + m) * p.v0;
                return OdeParameters{2.0, 0.0, 0.0, k2, 2.0 * g * p.a, g * p.a * p.a};
            },
            [&](const KratzerFues& p) {
                double const g = (e + m) * p.ve;
                return OdeParameters{2.0, 0.0, 0.0, k2 + 2.0 * g, 4.0 * g * p.re, 2.0 * g * p.re * p.re};
            },
            [&](const NonCentralRadial& p) {
                return OdeParameters{2.0, 0.0, 0.0, k2, -2.0 * (e + m) * p.alpha_c, p.lambda_sep};
            },
            [&](const Hulthen& p) {
                double const d2 = p.delta * p.delta;
                double const quad = (p.s0 * p.s0 - p.v0 * p.v0) / (d2 * p.q_def * p.q_def);
                double const lin = 2.0 * (m * p.s0 + e * p.v0) / (d2 * p.q_def);
                return OdeParameters{1.0, -2.0, -1.0, quad, 2.0 * quad + lin, quad + lin + k2 / d2};
            },
            [&](const WoodsSaxon& p) {
                double const a2 = p.a * p.a;
                return OdeParameters{1.0,
                                     -2.0,
                                     -1.0,
                                     a2 * (p.s0 * p.s0 - p.v0 * p.v0),
                                     2.0 * a2 * (e * p.v0 + m * p.s0),
                                     a2 * k2};
            },
            [&](const PoschlTeller& p) {
                double const a2 = p.alpha_pt * p.alpha_pt;
                double const l1 = k2 / (4.0 * a2);
                return OdeParameters{0.5,
                                     -1.0,
                                     -1.0,
                                     l1,
                                     l1 + (e + m) * (p.v1 - p.v2) / (2.0 * a2),
                                     (e + m) * p.v1 / (2.0 * a2)};
            },
        },
        spec);
}

} // namespace

OdeParameters modified_parameters(const OdeParameters& base, const PotentialSpec& spec, [[maybe_unused]] double m,
                                  [[maybe_unused]] double energy, int ell)
{
    if (ell < 0) {
        throw Error(ErrorCode::invalid_parameters, "angular momentum must be non-negative");
    }
    if (ell == 0) {
        return base;
    }
    double const w = centrifugal_weight(ell);
    OdeParameters out = base;
    std::visit(overloaded{
                   [&](const Hulthen& p) {
                       if (p.q_def != 1.0) {
                           throw Error(ErrorCode::hulthen_deformation_unsupported,
                                       "hulthen with l > 0 is only solvable for q = 1");
                       }
                       out.lambda1 += w;
                       out.lambda2 += w;
                   },
                   [&](const WoodsSaxon& p) {
                       PekerisCoefficients const d = resolved_pekeris(p);
                       double const f = w * p.a * p.a / (p.r_big * p.r_big);
                       out.lambda1 += f * d.d2;
                       out.lambda2 -= f * d.d1;
                       out.lambda3 += f * d.d0;
                   },
                   [&](const PoschlTeller&) { out.lambda2 -= 0.25 * w; },
                   [](const NonCentralRadial&) {},
                   [&](const auto&) { out.lambda3 += w; },
               },
               spec);
    return out;
}

MappedProblem map_potential(const PotentialSpec& spec, double m, double energy, int ell)
{
    validate(spec, m);
    if (!std::isfinite(energy)) {
        throw Error(ErrorCode::invalid_parameters, "energy must be finite");
    }
    OdeParameters const base = map_s_wave(spec, m, energy);
    return {modified_parameters(base, spec, m, energy, ell), make_transform(spec)};
}

double centrifugal_hulthen(double delta, double r)
{
    double const y = std::exp(-delta * r);
    double const one_minus_y = -std::expm1(-delta * r);
    return delta * delta * y / (one_minus_y * one_minus_y);
}

double centrifugal_pekeris(const WoodsSaxon& spec, double r)
{
    PekerisCoefficients const d = resolved_pekeris(spec);
    double const s = woods_saxon_shape(spec, r);
    return (d.d0 + d.d1 * s + d.d2 * s * s) / (spec.r_big * spec.r_big);
}

double centrifugal_sinh(double alpha, double r)
{
    double const s = std::sinh(alpha * r);
    return alpha * alpha / (s * s);
}

PekerisCoefficients pekeris_defaults(double a, double r_big, double q_def)
{
    // Match F(r) = d0 + d1 s + d2 s^2 to R^2/r^2 = 1, -2/R, 6/R^2 (value and
    // first two derivatives) at r = R, where s(R) = 1/(1+q),
    // s' = -s(1-s)/a and s'' = s(1-s)(1-2s)/a^2.
    double const s0 = 1.0 / (1.0 + q_def);
    double const ds = -s0 * (1.0 - s0) / a;
    double const d2s = s0 * (1.0 - s0) * (1.0 - 2.0 * s0) / (a * a);
    double const slope = -2.0 / (r_big * ds); // d1 + 2 d2 s0
    PekerisCoefficients c;
    c.d2 = (6.0 / (r_big * r_big) - slope * d2s) / (2.0 * ds * ds);
    c.d1 = slope - 2.0 * c.d2 * s0;
    c.d0 = 1.0 - c.d1 * s0 - c.d2 * s0 * s0;
    return c;
}

PekerisCoefficients resolved_pekeris(const WoodsSaxon& spec)
{
    return spec.pekeris ? *spec.pekeris : pekeris_defaults(spec.a, spec.r_big, spec.q_def);
}

} // namespace kgbound
