#ifndef UNSEEN_NORMAL_HPP
#define UNSEEN_NORMAL_HPP

namespace unseen {

double normal_cdf(double x);

/// Inverse standard normal CDF (AS241 PPND16 with one Newton polish step).
double normal_quantile(double p);

/// Upper-tail quantile z with P(Z > z) = tail, accurate for tiny tails.
double normal_upper_quantile(double tail);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

}  // namespace unseen

#endif  // UNSEEN_NORMAL_HPP
