// Independent oracles shared by the unit tests and the acceptance binary.
#ifndef UNSEEN_TESTS_BRUTE_FORCE_HPP
#define UNSEEN_TESTS_BRUTE_FORCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace test_oracle {

inline double summand(double t, double r, double n) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp(r * std::log(t) + n * std::log1p(-t));
}

inline double objective(const std::vector<double>& p, double r, double n) {
    double s = 0.0;
    for (double t : p) s += summand(t, r, n);
    return s;
}

// Euclidean projection onto the probability simplex (sort and threshold).
inline std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> s = v;
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        cum += s[i];
        const double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (s[i] - t > 0.0) theta = t;
    }
    for (double& x : v) x = std::max(0.0, x - theta);
    return v;
}

inline double hill_climb(std::vector<double> p, double r, double n) {
    double f = objective(p, r, n);
    double step = 0.1;
    std::vector<double> g(p.size());
    for (int it = 0; it < 20000 && step > 1e-15; ++it) {
        double gmax = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double t = p[i];
            g[i] = t <= 0.0 || t >= 1.0 ? 0.0
                                        : summand(t, r, n) * (r / t - n / (1.0 - t));
            gmax = std::max(gmax, std::abs(g[i]));
        }
        if (gmax == 0.0) {
            // Stuck on a vertex or zeros: nudge toward the barycenter.
            for (double& x : p) x = 0.5 * x + 0.5 / static_cast<double>(p.size());
            f = objective(p, r, n);
            continue;
        }
        std::vector<double> trial(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) trial[i] = p[i] + step * g[i] / gmax;
        trial = project_simplex(std::move(trial));
        const double ft = objective(trial, r, n);
        if (ft > f) {
            p = std::move(trial);
            f = ft;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    return f;
}

/// max over the k-simplex of sum p^r (1-p)^n: projected gradient ascent
/// from Dirichlet restarts and from every uniform sub-alphabet.
inline double projected_gradient_max(double r, std::uint64_t n, std::uint64_t k, int restarts,
                                     std::uint64_t seed) {
    const double nd = static_cast<double>(n);
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (std::uint64_t m = 1; m <= k; ++m) {
        std::vector<double> p(k, 0.0);
        for (std::uint64_t i = 0; i < m; ++i) p[i] = 1.0 / static_cast<double>(m);
        // Slight asymmetry lets the climber leave symmetric saddles.
        if (m < k) p[m] = 1e-6;
        best = std::max(best, hill_climb(project_simplex(p), r, nd));
    }
    for (double conc : {0.2, 1.0, 5.0}) {
        std::gamma_distribution<double> gam(conc, 1.0);
        for (int s = 0; s < restarts; ++s) {
            std::vector<double> p(k);
            for (double& x : p) x = gam(rng) + 1e-300;
            const double tot = std::accumulate(p.begin(), p.end(), 0.0);
            for (double& x : p) x /= tot;
            best = std::max(best, hill_climb(p, r, nd));
        }
    }
    return best;
}

/// max over t in [0,1] of h(t) + h(1-t): dense grid plus golden refinement.
inline double sweep_two_symbols(double r, std::uint64_t n) {
    const double nd = static_cast<double>(n);
    auto f = [&](double t) { return summand(t, r, nd) + summand(1.0 - t, r, nd); };
    const int grid = 200000;
    double best = 0.0;
    int arg = 0;
    for (int i = 0; i <= grid; ++i) {
        const double v = f(static_cast<double>(i) / grid);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    double a = std::max(0, arg - 1) / double(grid), b = std::min(grid, arg + 1) / double(grid);
    for (int it = 0; it < 200; ++it) {
        const double c = b - 0.618033988749895 * (b - a), d = a + 0.618033988749895 * (b - a);
        if (f(c) >= f(d)) b = d; else a = c;
    }
    return std::max(best, f(0.5 * (a + b)));
}

}  // namespace test_oracle

#endif  // UNSEEN_TESTS_BRUTE_FORCE_HPP
