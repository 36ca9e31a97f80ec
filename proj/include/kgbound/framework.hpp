#pragma once

#include <optional>

namespace kgbound {

/// Coefficients of the normal-form equation
///
///   psi'' + (c1 + c2 s) / (s (1 + c3 s)) psi'
///         + (-lambda1 s^2 + lambda2 s - lambda3) / (s^2 (1 + c3 s)^2) psi = 0
///
/// Every potential mapper produces values in exactly this sign convention.
struct OdeParameters
{
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;

    bool finite() const noexcept;
};

enum class Branch { jacobi, laguerre };

const char* to_string(Branch b) noexcept;

enum class Root { plus, minus };

/// Which square root is taken for the exponent at the origin (q) and for the
/// exponent at s = -1/c3 (p). Only the Jacobi branch honours a choice; the
/// Laguerre branch always takes the + roots.
struct RootChoice
{
    Root q = Root::plus;
    Root p = Root::plus;

    friend bool operator==(const RootChoice&, const RootChoice&) = default;
};

/// Factorized-ansatz data for one OdeParameters value.
///
/// Jacobi:   psi(s) = (1 + c3 s)^{-p} s^q P_n^{(alpha,beta)}(1 + 2 c3 s)
/// Laguerre: psi(s) = exp(-p s) s^q L_n^k(z_scale s)
struct ExponentSolution
{
    Branch branch = Branch::jacobi;
    double q = 0.0;
    double p = 0.0;
    double alpha = 0.0; // Jacobi only
    double beta = 0.0;  // Jacobi only
    double k = 0.0;     // Laguerre only
    double z_scale = 0.0; // Laguerre only, 2p - c2
    RootChoice roots{};
};

struct QuantizationResidual
{
    double value = 0.0;
    int n = 0;
    Branch branch = Branch::jacobi;
};

ExponentSolution solve_exponents_jacobi(const OdeParameters& params, RootChoice roots = {});
ExponentSolution solve_exponents_laguerre(const OdeParameters& params);

/// Dispatches on c3: Jacobi when c3 != 0, Laguerre otherwise.
ExponentSolution solve_exponents(const OdeParameters& params, RootChoice roots = {});

/// (q-p)^2 + (c2/c3 + 2n - 1)(q-p) + n(n + c2/c3 - 1) - lambda1/c3^2, signed.
QuantizationResidual quantization_residual_jacobi(const OdeParameters& params,
                                                  const ExponentSolution& exponents, int n);

/// c1 p - q (c2 - 2p) - lambda2 - n (c2 - 2p).
QuantizationResidual quantization_residual_laguerre(const OdeParameters& params,
                                                    const ExponentSolution& exponents, int n);

QuantizationResidual quantization_residual(const OdeParameters& params,
                                           const ExponentSolution& exponents, int n);

/// The two values of X = q - p that satisfy the Jacobi quantization condition
/// for degree n. Empty when the quadratic has no real root.
struct XRoots
{
    double lower = 0.0;
    double upper = 0.0;
};
std::optional<XRoots> jacobi_x_roots(const OdeParameters& params, int n);

/// Evaluates the factorized solution of degree n at s. `one_plus_c3s` is
/// 1 + c3 s supplied by the caller, so that transforms can hand over an
/// accurately computed complement near s = -1/c3. When 1 + c3 s < 0 the
/// factor |1 + c3 s|^{-p} is used; it solves the same equation there.
double factorized_solution(const ExponentSolution& exponents, int n, double s, double one_plus_c3s);

/// Coefficients of psi' and psi in the normal form at s. The overloads taking
/// 1 + c3 s avoid cancellation close to s = -1/c3.
double first_derivative_coefficient(const OdeParameters& params, double s);
double zeroth_order_coefficient(const OdeParameters& params, double s);
double first_derivative_coefficient(const OdeParameters& params, double s, double one_plus_c3s);
double zeroth_order_coefficient(const OdeParameters& params, double s, double one_plus_c3s);

} // namespace kgbound
