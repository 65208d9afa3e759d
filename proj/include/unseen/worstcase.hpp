#ifndef UNSEEN_WORSTCASE_HPP
#define UNSEEN_WORSTCASE_HPP

#include "unseen/pmf.hpp"

#include <cstdint>

namespace unseen {

/// P(some of m equiprobable symbols is missing from n draws),
/// i.e. 1 - m! S(n,m) / m^n. Exactly 1 when n < m.
double exceedance_uniform(std::uint64_t n, std::uint64_t m);

struct WorstCaseResult {
    std::uint64_t m_alpha = 1;
    double exceedance_at_m = 0.0;
    double exceedance_at_m_plus_1 = 1.0;
};

/// Largest m whose uniform exceedance is at most alpha.
WorstCaseResult find_m_alpha(std::uint64_t n, double alpha);

/// Uniform distribution over m_alpha symbols.
Pmf worst_case_pmf(std::uint64_t n, double alpha);

namespace detail {
// Inclusion-exclusion sum with a bound on its cancellation error.
struct SurjectionSum {
    double value;
    double error_bound;
};
SurjectionSum surjection_probability_series(std::uint64_t n, std::uint64_t m);
// Occupancy recursion over the number of distinct symbols seen; all terms
// are nonnegative.
double surjection_probability_recursive(std::uint64_t n, std::uint64_t m);
}  // namespace detail

}  // namespace unseen

#endif  // UNSEEN_WORSTCASE_HPP
