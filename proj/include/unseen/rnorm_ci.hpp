#ifndef UNSEEN_RNORM_CI_HPP
#define UNSEEN_RNORM_CI_HPP

#include "unseen/pmf.hpp"
#include "unseen/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

namespace unseen {

/// log of t^r (1-t)^n with 0 log 0 = 0 and log 0 = -inf.
template <typename Scalar>
Scalar log_power_term(Scalar t, Scalar r, Scalar n) {
    using std::log;
    using std::log1p;
    const Scalar neg_inf = -std::numeric_limits<Scalar>::infinity();
    if (t <= Scalar(0)) return r == Scalar(0) ? Scalar(0) : neg_inf;
    if (t >= Scalar(1)) return n == Scalar(0) ? Scalar(0) : neg_inf;
    return r * log(t) + n * log1p(-t);
}

/// Maximizing per-symbol mass of the unbounded worst case, (r-1)/(r-1+n).
template <typename Scalar>
Scalar q_star(Scalar r, std::uint64_t n) {
    return (r - Scalar(1)) / (r - Scalar(1) + Scalar(n));
}

/// log E_{r,n}(Delta) = (r-1) log q* + n log(1-q*).
template <typename Scalar>
Scalar log_e_r_unbounded(Scalar r, std::uint64_t n) {
    if (!(r >= Scalar(1))) throw std::domain_error("e_r_unbounded: r must be >= 1");
    if (n < 1) throw std::domain_error("e_r_unbounded: n must be >= 1");
    if (r == Scalar(1)) return Scalar(0);
    return log_power_term(q_star(r, n), r - Scalar(1), Scalar(n));
}

/// Worst-case expectation of the missing r-norm over all distributions.
template <typename Scalar>
Scalar e_r_unbounded(Scalar r, std::uint64_t n) {
    using std::exp;
    return exp(log_e_r_unbounded(r, n));
}

/// E_{r,n}(p) = sum_u p(u)^r (1-p(u))^n for a fixed distribution.
template <typename Derived>
typename Derived::Scalar exact_expectation(const Eigen::ArrayBase<Derived>& p,
                                           typename Derived::Scalar r,
                                           std::uint64_t n) {
    using Scalar = typename Derived::Scalar;
    if (!(r >= Scalar(1))) throw std::domain_error("exact_expectation: r must be >= 1");
    if (n < 1) throw std::domain_error("exact_expectation: n must be >= 1");
    Scalar total(0);
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const Scalar l = log_power_term(p[i], r, Scalar(n));
        if (std::isfinite(double(l))) total += std::exp(l);
    }
    return total;
}

inline double exact_expectation(const Pmf& p, double r, std::uint64_t n) {
    return exact_expectation(p.probs(), r, n);
}

/// Bonferroni-corrected rule of three, min(1, -ln(alpha/k)/n).
double rot_bonferroni(std::uint64_t n, std::uint64_t k, double alpha);

/// Minimizes (E(r)/alpha)^{1/r} over r >= 1.
///
/// `log_e` evaluates log E(r). The search runs a log-spaced grid on
/// [1, r_max] and refines with golden section around the best node.
/// `log_e_lower`, when given, is a cheap lower bound on log E(r); grid nodes
/// whose bound already exceeds the incumbent are never evaluated exactly.
UpperCi minimize_over_r(std::uint64_t n, double alpha, const RGrid& grid,
                        const std::function<double(double)>& log_e,
                        const std::function<double(double)>& log_e_lower = {});

/// Default r ceiling, 10 ln(max(n,2)) + 20.
double default_r_max(std::uint64_t n);

/// Sample-independent CI valid for every distribution on a countable alphabet.
UpperCi ci_unbounded(const CiConfig& cfg, const RGrid& grid = {});

inline UpperCi ci_unbounded(std::uint64_t n, double alpha) {
    return ci_unbounded(CiConfig{n, alpha, std::nullopt});
}

}  // namespace unseen

#endif  // UNSEEN_RNORM_CI_HPP
