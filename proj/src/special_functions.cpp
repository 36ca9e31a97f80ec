#include "kgbound/special_functions.hpp"

#include <cmath>
#include <string>

#include "kgbound/error.hpp"

namespace kgbound::special {

namespace {

constexpr double degenerate_window = 1e-9;

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x)) {
        throw Error(ErrorCode::non_finite_input, std::string(what) + " is not finite");
    }
}

void require_degree(int n)
{
    if (n < 0) {
        throw Error(ErrorCode::invalid_parameters, "polynomial degree must be non-negative");
    }
}

// C(x, k) = x (x-1) ... (x-k+1) / k! for real x.
double generalized_binomial(double x, int k)
{
    double c = 1.0;
    for (int j = 0; j < k; ++j) {
        c *= (x - j) / (j + 1);
    }
    return c;
}

} // namespace

bool jacobi_recurrence_degenerate(int n, double alpha, double beta)
{
    double const ab = alpha + beta;
    for (int m = 1; m <= 2 * n; ++m) {
        if (std::abs(ab + m) < degenerate_window) {
            return true;
        }
    }
    return false;
}

double jacobi_P_sum(int n, double alpha, double beta, double z)
{
    require_degree(n);
    double const zm = 0.5 * (z - 1.0);
    double const zp = 0.5 * (z + 1.0);
    double sum = 0.0;
    for (int s = 0; s <= n; ++s) {
        sum += generalized_binomial(n + alpha, n - s) * generalized_binomial(n + beta, s) *
               std::pow(zm, s) * std::pow(zp, n - s);
    }
    return sum;
}

double jacobi_P(int n, double alpha, double beta, double z)
{
    require_degree(n);
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    require_finite(z, "z");

    if (n == 0) {
        return 1.0;
    }
    if (jacobi_recurrence_degenerate(n, alpha, beta)) {
        return jacobi_P_sum(n, alpha, beta, z);
    }

    double const ab = alpha + beta;
    double p_prev = 1.0;
    double p = (alpha + 1.0) + 0.5 * (ab + 2.0) * (z - 1.0);
    for (int k = 1; k < n; ++k) {
        double const two_k_ab = 2.0 * k + ab;
        double const a1 = 2.0 * (k + 1) * (k + ab + 1.0) * two_k_ab;
        double const a2 = (two_k_ab + 1.0) * (alpha * alpha - beta * beta);
        double const a3 = two_k_ab * (two_k_ab + 1.0) * (two_k_ab + 2.0);
        double const a4 = 2.0 * (k + alpha) * (k + beta) * (two_k_ab + 2.0);
        double const p_next = ((a2 + a3 * z) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = p_next;
    }
    return p;
}

double laguerre_L(int n, double k, double z)
{
    require_degree(n);
    require_finite(k, "k");
    require_finite(z, "z");

    if (n == 0) {
        return 1.0;
    }
    double l_prev = 1.0;
    double l = 1.0 + k - z;
    for (int j = 1; j < n; ++j) {
        double const l_next = ((2.0 * j + 1.0 + k - z) * l - (j + k) * l_prev) / (j + 1.0);
        l_prev = l;
        l = l_next;
    }
    return l;
}

double log_gamma(double x)
{
    require_finite(x, "x");
    if (x <= 0.0) {
        throw Error(ErrorCode::nonpositive_argument, "log_gamma requires x > 0");
    }
    return std::lgamma(x);
}

} // namespace kgbound::special
