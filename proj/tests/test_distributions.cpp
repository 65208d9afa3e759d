#include <catch2/catch_amalgamated.hpp>

#include "unseen/distributions.hpp"
#include "unseen/parallel.hpp"

#include <cmath>
#include <random>

using namespace unseen;
using Catch::Approx;

TEST_CASE("pmf validation", "[pmf]") {
    CHECK_THROWS_AS(Pmf(Eigen::ArrayXd()), std::invalid_argument);
    CHECK_THROWS_AS(Pmf(Eigen::ArrayXd::Constant(2, 0.6)), std::invalid_argument);
    Eigen::ArrayXd neg(2);
    neg << 1.5, -0.5;
    CHECK_THROWS_AS(Pmf(neg), std::invalid_argument);
    CHECK_THROWS_AS(Pmf::from_weights(Eigen::ArrayXd::Zero(3)), std::invalid_argument);
    const Pmf p = make_uniform(3).padded(5);
    CHECK(p.size() == 5);
    CHECK(p[4] == 0.0);
    CHECK_THROWS_AS(make_uniform(3).padded(2), std::invalid_argument);
}

TEST_CASE("benchmark shapes", "[distributions]") {
    const Pmf z = make_zipf(1000, 1.01);
    double h = 0.0;
    for (int u = 1; u <= 1000; ++u) h += std::pow(u, -1.01);
    CHECK(z[0] == Approx(1.0 / h).epsilon(1e-12));
    CHECK(z[9] / z[0] == Approx(std::pow(10.0, -1.01)).epsilon(1e-12));

    const Pmf g = make_geometric(1000, 0.4);
    CHECK(g[0] == Approx(0.4).epsilon(1e-12));
    CHECK(g[1] == Approx(0.24).epsilon(1e-12));

    const Pmf nb = make_negative_binomial(1000, 1.0, 0.003);
    // l = 1: weights r^u (1-r), normalized over u = 1..k.
    CHECK(nb[1] / nb[0] == Approx(0.003).epsilon(1e-10));
    const Pmf nb3 = make_negative_binomial(50, 3.0, 0.5);
    // C(u+2,u) ratios: C(4,2)/C(3,1) = 2 at u = 2 vs u = 1, times r.
    CHECK(nb3[1] / nb3[0] == Approx(2.0 * 0.5).epsilon(1e-12));

    const Pmf bb = make_beta_binomial(10, 2.0, 2.0);
    CHECK(bb.size() == 11);
    CHECK(bb[0] == Approx(bb[10]).epsilon(1e-12));
    // P(X=0) = B(a, k+b) / B(a,b) = 6 Γ(12) / Γ(14) = 6 / (13 * 12).
    CHECK(bb[0] == Approx(6.0 / (13.0 * 12.0)).epsilon(1e-12));

    const Pmf u = make_uniform(7);
    CHECK(u[3] == Approx(1.0 / 7.0));
    CHECK_THROWS_AS(make_zipf(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_geometric(10, 1.0), std::domain_error);
}

TEST_CASE("zipf is stable for huge alphabets", "[distributions]") {
    const Pmf z = make_zipf(200000, 1.01);
    CHECK(z.probs().sum() == Approx(1.0).margin(1e-12));
    CHECK(z[199999] > 0.0);
}

TEST_CASE("counts csv parsing", "[distributions]") {
    const auto rows = parse_counts_csv("\xEF\xBB\xBFlabel,count\nthe,10\n\n a ,5\nthe,2\r\nx,y,3\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].label == "the");
    CHECK(rows[0].count == 12);
    CHECK(rows[1].label == "a");
    CHECK(rows[2].label == "x,y");
    CHECK(rows[2].count == 3);
    const auto headerless = parse_counts_csv("a,1\nb,3\n");
    REQUIRE(headerless.size() == 2);
    const Pmf p = from_counts(headerless);
    CHECK(p[1] == Approx(0.75));
    CHECK(p.labels()[1] == "b");
    CHECK_THROWS_AS(parse_counts_csv("a,1\nb,oops\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_counts_csv("a,1\nb,-2\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_counts_csv("a,1\nnocomma\n"), std::runtime_error);
    CHECK_THROWS_AS(from_counts({}), std::invalid_argument);
    CHECK_THROWS_AS(from_counts({{"a", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(read_counts_csv("/nonexistent/file.csv"), std::runtime_error);
}

TEST_CASE("sample counts round trip", "[distributions]") {
    const auto sc = SampleCounts::from_dense({0, 3, 0, 1});
    CHECK(sc.n == 4);
    CHECK(sc.distinct() == 2);
    CHECK(sc.count(1) == 3);
    CHECK(sc.count(2) == 0);
    CHECK(sc.to_dense(4) == std::vector<std::uint64_t>{0, 3, 0, 1});
    CHECK_THROWS_AS(sc.to_dense(3), std::invalid_argument);
}

TEST_CASE("alias sampler frequencies", "[distributions][oracle]") {
    Eigen::ArrayXd w(5);
    w << 0.5, 0.0, 0.25, 0.125, 0.125;
    const Pmf p(w);
    const AliasSampler s(p);
    std::mt19937_64 rng(99);
    std::vector<std::uint64_t> hits(5, 0);
    const int draws = 400000;
    for (int i = 0; i < draws; ++i) ++hits[s(rng)];
    CHECK(hits[1] == 0);
    for (int u : {0, 2, 3, 4}) {
        const double se = std::sqrt(p[u] * (1 - p[u]) / draws);
        CHECK(std::abs(hits[u] / double(draws) - p[u]) < 5 * se);
    }
}

TEST_CASE("sample is deterministic in the seed", "[distributions]") {
    const Pmf z = make_zipf(100, 1.01);
    const auto a = sample(z, 500, 42), b = sample(z, 500, 42), c = sample(z, 500, 43);
    CHECK(a.n == 500);
    CHECK(a.to_dense(100) == b.to_dense(100));
    CHECK(a.to_dense(100) != c.to_dense(100));
}

TEST_CASE("replicate seeds", "[parallel]") {
    CHECK(replicate_seed(1, 0) != replicate_seed(1, 1));
    CHECK(replicate_seed(1, 0) != replicate_seed(2, 0));
    CHECK(replicate_seed(5, 7) == replicate_seed(5, 7));
    std::vector<int> out(1000, 0);
    parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 5) throw std::runtime_error("x"); }),
                    std::runtime_error);
}
