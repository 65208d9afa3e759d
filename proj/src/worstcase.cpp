#include "unseen/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace unseen {
namespace detail {

SurjectionSum surjection_probability_series(std::uint64_t n, std::uint64_t m) {
    // sum_{j=0}^{m} (-1)^j C(m,j) (1 - j/m)^n, terms kept as (sign, log|term|).
    const double nd = static_cast<double>(n), md = static_cast<double>(m);
    std::vector<std::pair<double, int>> terms;
    terms.reserve(m);
    double log_binom = 0.0;
    for (std::uint64_t j = 0; j < m; ++j) {
        if (j > 0) log_binom += std::log((md - static_cast<double>(j - 1)) / static_cast<double>(j));
        const double log_term = log_binom + nd * std::log1p(-static_cast<double>(j) / md);
        terms.emplace_back(log_term, j % 2 == 0 ? 1 : -1);
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });

    // Neumaier-compensated sum in descending magnitude.
    double sum = 0.0, comp = 0.0, abs_sum = 0.0;
    for (const auto& [log_term, sign] : terms) {
        const double v = sign * std::exp(log_term);
        abs_sum += std::abs(v);
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    // Each term carries O(j + n) rounding in its logarithm.
    const double per_term = eps * (4.0 + 2.0 * md + std::log1p(nd));
    return {sum + comp, abs_sum * per_term};
}

double surjection_probability_recursive(std::uint64_t n, std::uint64_t m) {
    if (n < m) return 0.0;
    const double md = static_cast<double>(m);
    std::vector<double> occupied(m + 1, 0.0);
    occupied[0] = 1.0;
    for (std::uint64_t t = 0; t < n; ++t) {
        const std::uint64_t top = std::min<std::uint64_t>(t + 1, m);
        for (std::uint64_t o = top; o >= 1; --o)
            occupied[o] = occupied[o] * (static_cast<double>(o) / md) +
                          occupied[o - 1] * ((md - static_cast<double>(o - 1)) / md);
        occupied[0] = 0.0;
    }
    return occupied[m];
}

}  // namespace detail

namespace {
constexpr double kSeriesTolerance = 1e-14;
constexpr double kRecursionBudget = 2e8;
}  // namespace

double exceedance_uniform(std::uint64_t n, std::uint64_t m) {
    if (n < 1) throw std::domain_error("exceedance_uniform: n must be >= 1");
    if (m < 1) throw std::domain_error("exceedance_uniform: m must be >= 1");
    if (m == 1) return 0.0;
    if (n < m) return 1.0;
    const auto series = detail::surjection_probability_series(n, m);
    double all_seen = series.value;
    const double work = static_cast<double>(n) * static_cast<double>(m);
    if (series.error_bound > kSeriesTolerance && work <= kRecursionBudget)
        all_seen = detail::surjection_probability_recursive(n, m);
    return std::clamp(1.0 - all_seen, 0.0, 1.0);
}

WorstCaseResult find_m_alpha(std::uint64_t n, double alpha) {
    if (n < 1) throw std::domain_error("find_m_alpha: n must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("find_m_alpha: alpha must lie in (0,1)");
    auto feasible = [&](std::uint64_t m) { return exceedance_uniform(n, m) <= alpha; };

    // Bracket: lo feasible, hi infeasible. m > n is never feasible.
    std::uint64_t lo = 1, hi = 2;
    while (hi <= n && feasible(hi)) {
        lo = hi;
        hi = std::min<std::uint64_t>(2 * hi, n + 1);
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (feasible(mid) ? lo : hi) = mid;
    }

    auto exc = [&](std::uint64_t m) { return m > n ? 1.0 : exceedance_uniform(n, m); };
    bool monotone = true;
    for (std::uint64_t m = lo > 2 ? lo - 2 : 1; m < lo + 2; ++m)
        if (exc(m) > exc(m + 1)) monotone = false;
    if (!monotone) {
        lo = 1;
        for (std::uint64_t m = 2; m <= n; ++m)
            if (feasible(m)) lo = m;
    }
    return {lo, exc(lo), exc(lo + 1)};
}

Pmf worst_case_pmf(std::uint64_t n, double alpha) {
    const auto m = find_m_alpha(n, alpha).m_alpha;
    return Pmf(Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(m), 1.0 / static_cast<double>(m)));
}

}  // namespace unseen
