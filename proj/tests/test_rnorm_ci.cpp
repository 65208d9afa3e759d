#include <catch2/catch_amalgamated.hpp>

#include "unseen/distributions.hpp"
#include "unseen/rnorm_ci.hpp"

#include <cmath>
#include <random>

using namespace unseen;
using Catch::Approx;

namespace {

// Reference values from a 50-digit mpmath evaluation of
// min_r ((q*^(r-1) (1-q*)^n) / alpha)^(1/r).
struct Reference {
    std::uint64_t n;
    double upper;
    double r_star;
};
constexpr Reference kReference[] = {
    {58, 0.0891139272489, 6.6743},
    {30, 0.150411923029, 6.311},
    {1000, 0.00781653671671, 8.878},
    {2, 0.8, 9.0},
    {1, 20.0 / 21.0, 21.0},
};

// Brute force: dense linear r-grid, no refinement, no pruning.
double brute_force_ci(std::uint64_t n, double alpha, double r_max, double step) {
    double best = 1.0;
    for (double r = 1.0; r <= r_max; r += step) {
        const double lq = log_e_r_unbounded(r, n);
        best = std::min(best, std::exp((lq - std::log(alpha)) / r));
    }
    return best;
}

}  // namespace

TEST_CASE("log_power_term conventions", "[rnorm]") {
    CHECK(log_power_term(0.0, 0.0, 5.0) == 0.0);
    CHECK(std::isinf(log_power_term(0.0, 2.0, 5.0)));
    CHECK(std::isinf(log_power_term(1.0, 2.0, 5.0)));
    CHECK(log_power_term(1.0, 2.0, 0.0) == 0.0);
    CHECK(log_power_term(0.5, 1.0, 1.0) == Approx(std::log(0.25)));
}

TEST_CASE("unbounded worst case closed form", "[rnorm]") {
    CHECK(e_r_unbounded(1.0, 10) == 1.0);
    CHECK(e_r_unbounded(2.0, 1) == Approx(0.25).epsilon(1e-15));
    CHECK(e_r_unbounded(7.0, 58) == Approx(2.250156859e-9).epsilon(1e-9));
    CHECK(q_star(10.0, 1000) == Approx(9.0 / 1009.0));
    CHECK_THROWS_AS(e_r_unbounded(0.5, 10), std::domain_error);
    CHECK_THROWS_AS(e_r_unbounded(2.0, 0), std::domain_error);
}

TEST_CASE("worst case dominates every distribution", "[rnorm][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 1 + static_cast<int>(u(rng) * 40);
        Eigen::ArrayXd w(k);
        for (int i = 0; i < k; ++i) w[i] = std::pow(u(rng), 3.0);
        if (w.sum() == 0.0) w[0] = 1.0;
        const Pmf p = Pmf::from_weights(w);
        const double r = 1.0 + 15.0 * u(rng);
        const std::uint64_t n = 1 + static_cast<std::uint64_t>(u(rng) * 300);
        CHECK(exact_expectation(p, r, n) <= e_r_unbounded(r, n) * (1.0 + 1e-12));
    }
}

TEST_CASE("worst case is attained by the uniform at integral 1/q*", "[rnorm]") {
    // 1/q* = 1 + n/(r-1) = 11 at r = 1.5, n = 5.
    const Pmf p = make_uniform(11);
    CHECK(exact_expectation(p, 1.5, 5) == Approx(e_r_unbounded(1.5, 5)).epsilon(1e-13));
}

TEST_CASE("ci_unbounded matches reference values", "[rnorm]") {
    for (const auto& ref : kReference) {
        const auto ci = ci_unbounded(ref.n, 0.05);
        INFO("n = " << ref.n);
        CHECK(ci.upper == Approx(ref.upper).epsilon(1e-9));
        CHECK(ci.r_star == Approx(ref.r_star).epsilon(2e-3));
        CHECK(ci.method == CiMethod::unbounded);
    }
}

TEST_CASE("ci_unbounded agrees with a dense brute-force r scan", "[rnorm]") {
    for (std::uint64_t n : {3u, 11u, 58u, 400u, 5000u}) {
        for (double alpha : {0.01, 0.05, 0.2}) {
            const auto ci = ci_unbounded(n, alpha);
            const double brute = brute_force_ci(n, alpha, default_r_max(n), 1e-3);
            INFO("n = " << n << " alpha = " << alpha);
            CHECK(ci.upper <= brute * (1.0 + 1e-12));
            CHECK(ci.upper == Approx(brute).epsilon(1e-6));
        }
    }
}

TEST_CASE("ci_unbounded is monotone in n and alpha", "[rnorm][property]") {
    double prev = 1.0;
    for (std::uint64_t n = 1; n < 3000; n = n * 3 / 2 + 1) {
        const double u = ci_unbounded(n, 0.05).upper;
        CHECK(u <= prev * (1.0 + 1e-12));
        prev = u;
    }
    CHECK(ci_unbounded(100, 0.01).upper > ci_unbounded(100, 0.1).upper);
}

TEST_CASE("ci_unbounded is below the rule of three once k is large", "[rnorm]") {
    const double ours = ci_unbounded(1000, 0.05).upper;
    CHECK(ours < rot_bonferroni(1000, 10000, 0.05));
    CHECK(ours < rot_bonferroni(1000, 1000, 0.05));
}

TEST_CASE("rule of three", "[rnorm]") {
    CHECK(rot_bonferroni(58, 75, 0.05) == Approx(0.12609000667).epsilon(1e-9));
    CHECK(rot_bonferroni(100, 1, 0.05) == Approx(0.0299573227355).epsilon(1e-10));
    CHECK(rot_bonferroni(30, 75, 0.05) == Approx(0.24377401290).epsilon(1e-9));
    CHECK(rot_bonferroni(1, 100, 0.05) == 1.0);
    CHECK_THROWS_AS(rot_bonferroni(0, 1, 0.05), std::domain_error);
    CHECK_THROWS_AS(rot_bonferroni(5, 0, 0.05), std::domain_error);
    CHECK_THROWS_AS(rot_bonferroni(5, 1, 1.0), std::domain_error);
}

TEST_CASE("config validation", "[rnorm]") {
    CHECK_THROWS_AS(ci_unbounded(CiConfig{0, 0.05, std::nullopt}), std::domain_error);
    CHECK_THROWS_AS(ci_unbounded(CiConfig{10, 0.0, std::nullopt}), std::domain_error);
    CHECK_THROWS_AS(ci_unbounded(CiConfig{10, 1.0, std::nullopt}), std::domain_error);
    RGrid bad;
    bad.points = 2;
    CHECK_THROWS_AS(ci_unbounded(CiConfig{10, 0.05, std::nullopt}, bad), std::domain_error);
}

TEST_CASE("narrow r grid still returns a valid bound", "[rnorm]") {
    RGrid g;
    g.r_max = 2.0;
    g.points = 5;
    const auto ci = ci_unbounded(CiConfig{1000, 0.05, std::nullopt}, g);
    CHECK(ci.r_star <= 2.0);
    CHECK(ci.upper >= ci_unbounded(1000, 0.05).upper);
}

TEST_CASE("templates accept long double", "[rnorm]") {
    const long double e = e_r_unbounded<long double>(7.0L, 58);
    CHECK(static_cast<double>(e) == Approx(2.250156859e-9).epsilon(1e-9));
}
