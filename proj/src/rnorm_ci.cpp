#include "unseen/rnorm_ci.hpp"

#include "unseen/optimize.hpp"

#include <algorithm>
#include <numeric>

namespace unseen {

double rot_bonferroni(std::uint64_t n, std::uint64_t k, double alpha) {
    if (n < 1) throw std::domain_error("rot_bonferroni: n must be >= 1");
    if (k < 1) throw std::domain_error("rot_bonferroni: k must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("rot_bonferroni: alpha must lie in (0,1)");
    return std::min(1.0, -std::log(alpha / static_cast<double>(k)) / static_cast<double>(n));
}

double default_r_max(std::uint64_t n) {
    return 10.0 * std::log(static_cast<double>(std::max<std::uint64_t>(n, 2))) + 20.0;
}

UpperCi minimize_over_r(std::uint64_t n, double alpha, const RGrid& grid,
                        const std::function<double(double)>& log_e,
                        const std::function<double(double)>& log_e_lower) {
    const double r_max = grid.r_max > grid.r_min ? grid.r_max : default_r_max(n);
    if (!(grid.r_min >= 1.0) || !(r_max > grid.r_min) || grid.points < 3 ||
        !(grid.refine_tol > 0.0))
        throw std::domain_error("minimize_over_r: invalid r grid");
    const double log_alpha = std::log(alpha);
    auto objective = [&](double log_value, double r) { return (log_value - log_alpha) / r; };

    const auto rs = log_spaced(grid.r_min, r_max, grid.points);
    const auto m = rs.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> exact(m, inf);
    std::vector<double> exact_log(m, inf);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> bound(m, -inf);
    if (log_e_lower) {
        for (std::size_t i = 0; i < m; ++i) bound[i] = objective(log_e_lower(rs[i]), rs[i]);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return bound[a] < bound[b]; });
    }

    double incumbent = inf;
    std::size_t arg = 0;
    for (std::size_t idx : order) {
        if (bound[idx] >= incumbent) break;
        exact_log[idx] = log_e(rs[idx]);
        if (exact_log[idx] == -inf) {
            // E = 0: the interval collapses to a point.
            return UpperCi{0.0, rs[idx], 0.0, CiMethod::unbounded};
        }
        exact[idx] = objective(exact_log[idx], rs[idx]);
        if (exact[idx] < incumbent || (exact[idx] == incumbent && idx < arg)) {
            incumbent = exact[idx];
            arg = idx;
        }
    }

    double r_best = rs[arg];
    double obj_best = exact[arg];
    double log_best = exact_log[arg];
    const double lo = rs[arg > 0 ? arg - 1 : 0];
    const double hi = rs[arg + 1 < m ? arg + 1 : m - 1];
    auto refined = golden_section_min(
        [&](double r) { return objective(log_e(r), r); }, lo, hi,
        std::max(1e-12, std::sqrt(grid.refine_tol) * 1e-3));
    if (refined.value < obj_best) {
        r_best = refined.x;
        obj_best = refined.value;
        log_best = log_e(r_best);
    }

    UpperCi out;
    out.r_star = r_best;
    out.e_value = std::exp(log_best);
    out.upper = std::min(1.0, std::exp(obj_best));
    return out;
}

UpperCi ci_unbounded(const CiConfig& cfg, const RGrid& grid) {
    cfg.validate();
    auto out = minimize_over_r(cfg.n, cfg.alpha, grid,
                               [n = cfg.n](double r) { return log_e_r_unbounded(r, n); });
    out.method = CiMethod::unbounded;
    return out;
}

}  // namespace unseen
