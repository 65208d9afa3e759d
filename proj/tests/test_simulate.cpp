#include <catch2/catch_amalgamated.hpp>

#include "unseen/bounded_k.hpp"
#include "unseen/parallel.hpp"
#include "unseen/rnorm_ci.hpp"
#include "unseen/simulate.hpp"
#include "unseen/worstcase.hpp"

#include <cmath>
#include <random>

using namespace unseen;
using Catch::Approx;

namespace {

Pmf small_pmf() {
    Eigen::ArrayXd w(4);
    w << 0.4, 0.3, 0.2, 0.1;
    return Pmf(w);
}

}  // namespace

TEST_CASE("missing-mass functionals", "[simulate]") {
    const Pmf p = small_pmf();
    const auto seen = SampleCounts::from_dense({2, 0, 1, 0});
    CHECK(m_max(p, seen) == Approx(0.3));
    CHECK(m_r(p, seen, 1.0) == Approx(0.4));
    CHECK(m_r(p, seen, 2.0) == Approx(0.09 + 0.01));
    CHECK(m_max(p, SampleCounts::from_dense({1, 1, 1, 1})) == 0.0);
    CHECK_THROWS_AS(m_r(p, seen, 0.0), std::domain_error);
}

TEST_CASE("m_r^(1/r) is non-increasing in r and bounded below by m_max", "[simulate][property]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + static_cast<int>(u(rng) * 30);
        Eigen::ArrayXd w(k);
        for (int i = 0; i < k; ++i) w[i] = u(rng) + 1e-3;
        const Pmf p = Pmf::from_weights(w);
        const auto s = sample(p, 1 + static_cast<std::uint64_t>(u(rng) * 20), trial);
        const double mx = m_max(p, s);
        double prev = 2.0;
        for (double r : {1.0, 1.5, 2.0, 4.0, 9.0, 30.0}) {
            const double norm = std::pow(m_r(p, s, r), 1.0 / r);
            CHECK(norm <= prev * (1.0 + 1e-12));
            CHECK(norm >= mx * (1.0 - 1e-12));
            prev = norm;
        }
    }
}

TEST_CASE("expected m_r matches the closed form", "[simulate][oracle]") {
    const Pmf p = small_pmf();
    const std::uint64_t n = 6, reps = 200000;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < reps; ++i) sum += m_r(p, sample(p, n, i), 2.0);
    const double mc = sum / reps;
    CHECK(mc == Approx(exact_expectation(p, 2.0, n)).epsilon(0.02));
}

TEST_CASE("empirical quantile convention", "[simulate]") {
    CHECK(empirical_upper_quantile({0.0, 0.0, 0.0, 1.0}, 0.25) == 1.0);
    CHECK(empirical_upper_quantile({0.0, 0.0, 0.0, 1.0}, 0.2) == 1.0);
    CHECK(empirical_upper_quantile({0.1, 0.2, 0.3, 0.4, 0.5}, 0.4) == 0.4);
    CHECK(empirical_upper_quantile({0.1, 0.2, 0.3, 0.4, 0.5}, 0.39) == 0.5);
    CHECK(empirical_upper_quantile({0.3, 0.3, 0.3}, 0.05) == 0.3);
    CHECK_THROWS_AS(empirical_upper_quantile({}, 0.05), std::invalid_argument);
}

TEST_CASE("simulation does not depend on the thread count", "[simulate]") {
    const Pmf z = make_zipf(2000, 1.01);
    const auto a = simulate_m_max(z, 300, 1000, 11, 1);
    CHECK(a == simulate_m_max(z, 300, 1000, 11, 4));
    CHECK(a == simulate_m_max(z, 300, 1000, 11, 8));
    CHECK(a != simulate_m_max(z, 300, 1000, 12, 1));
}

TEST_CASE("fast path agrees with the sample-based definition", "[simulate]") {
    const Pmf z = make_zipf(500, 1.01);
    const auto values = simulate_m_max(z, 200, 50, 5, 1);
    // Replicate i draws from mt19937_64 seeded with replicate_seed(5, i).
    const AliasSampler s(z);
    std::vector<std::uint64_t> scratch(z.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::mt19937_64 rng(replicate_seed(5, i));
        CHECK(values[i] == m_max(z, s.draw(200, rng, scratch)));
    }
}

TEST_CASE("monte carlo non-coverage on the uniform matches the exact value", "[simulate][oracle]") {
    for (std::uint64_t m : {20u, 128u, 140u}) {
        const Pmf p = make_uniform(m);
        const std::uint64_t n = 1000, reps = 20000;
        const auto rep = coverage(p, CiConfig{n, 0.05, std::nullopt}, 1.0 / m, reps, 8, 1);
        const double exact = exceedance_uniform(n, m);
        const double se = std::sqrt(exact * (1 - exact) / reps) + 1.0 / reps;
        INFO("m = " << m);
        CHECK(std::abs((1.0 - rep.coverage_rate) - exact) <= 3 * se);
    }
}

TEST_CASE("oracle quantile", "[simulate]") {
    const CiConfig cfg{1000, 0.05, std::nullopt};
    CHECK(oracle_quantile(make_uniform(1), cfg, 10, 1) == 0.0);
    CHECK(oracle_quantile(make_uniform(128), cfg, 10, 1) == 1.0 / 128);
    CHECK(oracle_quantile(make_uniform(128).padded(1000), cfg, 10, 1) == 1.0 / 128);
    const double oz = oracle_quantile(make_zipf(1000, 1.01), cfg, 10000, 1);
    CHECK(oz > 0.0);
    CHECK(oz < ci_unbounded(1000, 0.05).upper);
}

TEST_CASE("benchmark factory", "[simulate]") {
    DistSpec d;
    d.kind = "worstcase";
    CHECK(make_benchmark(d, 100, 1000, 0.05).size() == 128);
    CHECK(make_benchmark(d, 1000, 1000, 0.05).size() == 1000);
    d.kind = "betabin";
    CHECK(make_benchmark(d, 100, 1000, 0.05).size() == 101);
    d.kind = "nope";
    CHECK_THROWS_AS(make_benchmark(d, 100, 1000, 0.05), std::invalid_argument);
    CHECK(benchmark_suite().size() == 6);
}

TEST_CASE("alphabet-size sweep runner", "[simulate]") {
    DistSpec d;
    d.kind = "zipf";
    SweepConfig cfg;
    cfg.reps = 300;
    const Table t = run_figure1(d, cfg, {100, 1000});
    REQUIRE(t.rows.size() == 2);
    REQUIRE(t.header.size() == t.rows[0].size());
    CHECK(t.header[6] == "bounded");
    // Unbounded column is constant in k.
    CHECK(t.rows[0][8] == t.rows[1][8]);
    CHECK(std::stod(t.rows[1][6]) <= std::stod(t.rows[1][5]));
    CHECK(t.to_csv() == run_figure1(d, cfg, {100, 1000}).to_csv());
}

TEST_CASE("subsample-size sweep runner", "[simulate]") {
    Eigen::ArrayXd w(30);
    for (int i = 0; i < 30; ++i) w[i] = 1.0 / (i + 1);
    SweepConfig cfg;
    cfg.reps = 500;
    const Table t = run_figure2(Pmf::from_weights(w), cfg, {10, 50});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.header[3] == "rot");
    CHECK(std::stod(t.rows[0][4]) <= std::stod(t.rows[0][3]));
}

TEST_CASE("coverage validates its input", "[simulate]") {
    const Pmf p = make_uniform(3);
    CHECK_THROWS_AS(coverage(p, CiConfig{0, 0.05, std::nullopt}, 0.1, 10, 1), std::domain_error);
    CHECK_THROWS_AS(coverage(p, CiConfig{10, 0.05, std::nullopt}, 1.5, 10, 1), std::domain_error);
    CHECK_THROWS_AS(coverage(p, CiConfig{10, 0.05, std::nullopt}, 0.1, 0, 1), std::domain_error);
}
