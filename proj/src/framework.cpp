#include "kgbound/framework.hpp"

#include <cmath>
#include <sstream>

#include "kgbound/error.hpp"
#include "kgbound/special_functions.hpp"

namespace kgbound {

namespace {

double signed_root(Root r, double discriminant)
{
    double const root = std::sqrt(discriminant);
    return r == Root::plus ? root : -root;
}

void require_finite(const OdeParameters& params)
{
    if (!params.finite()) {
        throw Error(ErrorCode::invalid_parameters, "OdeParameters contain a non-finite value");
    }
}

void require_degree(int n)
{
    if (n < 0) {
        throw Error(ErrorCode::invalid_parameters, "quantum number n must be non-negative");
    }
}

} // namespace

bool OdeParameters::finite() const noexcept
{
    return std::isfinite(c1) && std::isfinite(c2) && std::isfinite(c3) && std::isfinite(lambda1) &&
           std::isfinite(lambda2) && std::isfinite(lambda3);
}

const char* to_string(Branch b) noexcept
{
    return b == Branch::jacobi ? "jacobi" : "laguerre";
}

ExponentSolution solve_exponents_jacobi(const OdeParameters& params, RootChoice roots)
{
    require_finite(params);
    if (params.c3 == 0.0) {
        throw Error(ErrorCode::zero_c3, "c3 = 0 requires the Laguerre branch");
    }
    double const half_offset = 0.5 * (1.0 - params.c1);
    double const disc_q = half_offset * half_offset + params.lambda3;
    double const ratio = params.c2 / params.c3;
    double const d = ratio - params.c1 - 1.0;
    double const h = params.lambda1 / (params.c3 * params.c3) + params.lambda2 / params.c3 + params.lambda3;
    double const disc_p = 0.25 * d * d + h;
    if (disc_q < 0.0 || disc_p < 0.0) {
        std::ostringstream msg;
        msg << "exponent discriminants (" << disc_q << ", " << disc_p << ") must be non-negative";
        throw Error(ErrorCode::negative_discriminant, msg.str());
    }

    ExponentSolution out;
    out.branch = Branch::jacobi;
    out.roots = roots;
    out.q = half_offset + signed_root(roots.q, disc_q);
    out.p = 0.5 * d + signed_root(roots.p, disc_p);
    out.alpha = 2.0 * out.q + params.c1 - 1.0;
    out.beta = -2.0 * out.p - params.c1 + ratio - 1.0;
    return out;
}

ExponentSolution solve_exponents_laguerre(const OdeParameters& params)
{
    require_finite(params);
    if (params.c3 != 0.0) {
        throw Error(ErrorCode::nonzero_c3, "c3 != 0 requires the Jacobi branch");
    }
    double const half_offset = 0.5 * (1.0 - params.c1);
    double const disc_q = half_offset * half_offset + params.lambda3;
    double const disc_p = 0.25 * params.c2 * params.c2 + params.lambda1;
    if (disc_q < 0.0 || disc_p < 0.0) {
        std::ostringstream msg;
        msg << "exponent discriminants (" << disc_q << ", " << disc_p << ") must be non-negative";
        throw Error(ErrorCode::negative_discriminant, msg.str());
    }

    ExponentSolution out;
    out.branch = Branch::laguerre;
    out.q = half_offset + std::sqrt(disc_q);
    out.p = 0.5 * params.c2 + std::sqrt(disc_p);
    out.k = params.c1 + 2.0 * out.q - 1.0;
    out.z_scale = 2.0 * out.p - params.c2;
    if (!(out.z_scale > 0.0)) {
        throw Error(ErrorCode::nonpositive_scale, "Laguerre argument scale 2p - c2 must be positive");
    }
    return out;
}

ExponentSolution solve_exponents(const OdeParameters& params, RootChoice roots)
{
    return params.c3 != 0.0 ? solve_exponents_jacobi(params, roots) : solve_exponents_laguerre(params);
}

QuantizationResidual quantization_residual_jacobi(const OdeParameters& params,
                                                  const ExponentSolution& exponents, int n)
{
    require_degree(n);
    if (exponents.branch != Branch::jacobi || params.c3 == 0.0) {
        throw Error(ErrorCode::branch_mismatch, "Jacobi residual needs a Jacobi-branch solution");
    }
    double const ratio = params.c2 / params.c3;
    double const x = exponents.q - exponents.p;
    double const value = x * x + (ratio + 2.0 * n - 1.0) * x + n * (n + ratio - 1.0) -
                         params.lambda1 / (params.c3 * params.c3);
    return {value, n, Branch::jacobi};
}

QuantizationResidual quantization_residual_laguerre(const OdeParameters& params,
                                                    const ExponentSolution& exponents, int n)
{
    require_degree(n);
    if (exponents.branch != Branch::laguerre || params.c3 != 0.0) {
        throw Error(ErrorCode::branch_mismatch, "Laguerre residual needs a Laguerre-branch solution");
    }
    double const slope = params.c2 - 2.0 * exponents.p;
    double const value = params.c1 * exponents.p - exponents.q * slope - params.lambda2 - n * slope;
    return {value, n, Branch::laguerre};
}

QuantizationResidual quantization_residual(const OdeParameters& params,
                                           const ExponentSolution& exponents, int n)
{
    return exponents.branch == Branch::jacobi ? quantization_residual_jacobi(params, exponents, n)
                                              : quantization_residual_laguerre(params, exponents, n);
}

std::optional<XRoots> jacobi_x_roots(const OdeParameters& params, int n)
{
    require_degree(n);
    if (params.c3 == 0.0) {
        throw Error(ErrorCode::zero_c3, "X roots exist only on the Jacobi branch");
    }
    double const ratio = params.c2 / params.c3;
    double const b = ratio + 2.0 * n - 1.0;
    double const c = n * (n + ratio - 1.0) - params.lambda1 / (params.c3 * params.c3);
    double const disc = b * b - 4.0 * c;
    if (disc < 0.0) {
        return std::nullopt;
    }
    double const root = std::sqrt(disc);
    return XRoots{0.5 * (-b - root), 0.5 * (-b + root)};
}

double factorized_solution(const ExponentSolution& exponents, int n, double s, double one_plus_c3s)
{
    if (exponents.branch == Branch::jacobi) {
        double const z = 2.0 * one_plus_c3s - 1.0;
        return std::pow(std::abs(one_plus_c3s), -exponents.p) * std::pow(s, exponents.q) *
               special::jacobi_P(n, exponents.alpha, exponents.beta, z);
    }
    return std::exp(-exponents.p * s) * std::pow(s, exponents.q) *
           special::laguerre_L(n, exponents.k, exponents.z_scale * s);
}

double first_derivative_coefficient(const OdeParameters& params, double s)
{
    return first_derivative_coefficient(params, s, 1.0 + params.c3 * s);
}

double zeroth_order_coefficient(const OdeParameters& params, double s)
{
    return zeroth_order_coefficient(params, s, 1.0 + params.c3 * s);
}

double first_derivative_coefficient(const OdeParameters& params, double s, double one_plus_c3s)
{
    return (params.c1 + params.c2 * s) / (s * one_plus_c3s);
}

double zeroth_order_coefficient(const OdeParameters& params, double s, double one_plus_c3s)
{
    double const t = s * one_plus_c3s;
    return (-params.lambda1 * s * s + params.lambda2 * s - params.lambda3) / (t * t);
}

} // namespace kgbound
