#pragma once

namespace kgbound::special {

/// Jacobi polynomial P_n^{(alpha,beta)}(z) for real parameters and any real z.
///
/// Uses the three-term recurrence in degree. When alpha+beta lies within
/// 1e-9 of one of the negative integers -1 ... -2n the recurrence
/// denominators vanish and the explicit binomial sum is used instead.
double jacobi_P(int n, double alpha, double beta, double z);

/// Explicit finite sum
///   sum_s C(n+alpha, n-s) C(n+beta, s) ((z-1)/2)^s ((z+1)/2)^(n-s)
/// with generalized binomials. Valid for every real alpha, beta.
double jacobi_P_sum(int n, double alpha, double beta, double z);

/// Associated Laguerre polynomial L_n^k(z) by the three-term recurrence.
double laguerre_L(int n, double k, double z);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// True when alpha+beta sits in the guard window of a vanishing recurrence
/// denominator for degree n.
bool jacobi_recurrence_degenerate(int n, double alpha, double beta);

} // namespace kgbound::special
