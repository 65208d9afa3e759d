#include "unseen/simulate.hpp"

#include "unseen/bounded_k.hpp"
#include "unseen/parallel.hpp"
#include "unseen/rnorm_ci.hpp"
#include "unseen/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace unseen {

double m_max(const Pmf& p, const SampleCounts& counts) {
    double best = 0.0;
    auto it = counts.counts.begin();
    for (std::size_t u = 0; u < p.size(); ++u) {
        while (it != counts.counts.end() && it->symbol < u) ++it;
        const bool seen = it != counts.counts.end() && it->symbol == u && it->count > 0;
        if (!seen) best = std::max(best, p[u]);
    }
    return best;
}

double m_r(const Pmf& p, const SampleCounts& counts, double r) {
    if (!(r > 0.0)) throw std::domain_error("m_r: r must be > 0");
    double total = 0.0;
    auto it = counts.counts.begin();
    for (std::size_t u = 0; u < p.size(); ++u) {
        while (it != counts.counts.end() && it->symbol < u) ++it;
        const bool seen = it != counts.counts.end() && it->symbol == u && it->count > 0;
        if (!seen && p[u] > 0.0) total += std::pow(p[u], r);
    }
    return total;
}

std::vector<double> simulate_m_max(const Pmf& p, std::uint64_t n, std::uint64_t reps,
                                   std::uint64_t seed, unsigned threads) {
    const AliasSampler sampler(p);
    std::vector<std::uint64_t> by_mass;
    for (std::size_t u = 0; u < p.size(); ++u)
        if (p[u] > 0.0) by_mass.push_back(u);
    std::stable_sort(by_mass.begin(), by_mass.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return p[a] > p[b]; });

    std::vector<double> out(reps, 0.0);
    constexpr std::size_t kBlock = 256;
    const std::size_t blocks = (reps + kBlock - 1) / kBlock;
    parallel_for(blocks, threads, [&](std::size_t b) {
        std::vector<std::uint32_t> hits(p.size(), 0);
        std::vector<std::uint64_t> touched;
        const std::size_t end = std::min<std::size_t>(reps, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            std::mt19937_64 rng(replicate_seed(seed, i));
            touched.clear();
            for (std::uint64_t d = 0; d < n; ++d) {
                const auto u = sampler(rng);
                if (hits[u]++ == 0) touched.push_back(u);
            }
            double value = 0.0;
            for (auto u : by_mass)
                if (hits[u] == 0) {
                    value = p[u];
                    break;
                }
            out[i] = value;
            for (auto u : touched) hits[u] = 0;
        }
    });
    return out;
}

double empirical_upper_quantile(std::vector<double> values, double alpha) {
    if (values.empty()) throw std::invalid_argument("empirical_upper_quantile: no values");
    std::sort(values.begin(), values.end());
    const double total = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size();) {
        // values[i] is the first occurrence of its value; i elements lie below it.
        if (static_cast<double>(values.size() - i) / total <= alpha) return values[i];
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        i = j;
    }
    return values.back();
}

SimulationReport coverage(const Pmf& p, const CiConfig& cfg, double threshold,
                          std::uint64_t reps, std::uint64_t seed, unsigned threads) {
    cfg.validate();
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::domain_error("coverage: threshold must lie in [0,1]");
    if (reps < 1) throw std::domain_error("coverage: reps must be >= 1");
    const auto values = simulate_m_max(p, cfg.n, reps, seed, threads);
    SimulationReport rep;
    rep.reps = reps;
    rep.seed = seed;
    rep.threshold = threshold;
    double sum = 0.0;
    for (double v : values) {
        if (v >= threshold) ++rep.non_coverage;
        sum += v;
    }
    rep.coverage_rate = 1.0 - static_cast<double>(rep.non_coverage) / static_cast<double>(reps);
    rep.mean_m_max = sum / static_cast<double>(reps);
    rep.quantile_1_minus_alpha = empirical_upper_quantile(values, cfg.alpha);
    return rep;
}

namespace {

// Support size if every nonzero mass is equal, else 0.
std::size_t uniform_support(const Pmf& p) {
    double mass = 0.0;
    std::size_t m = 0;
    for (std::size_t u = 0; u < p.size(); ++u) {
        if (p[u] <= 0.0) continue;
        if (m == 0) mass = p[u];
        else if (std::abs(p[u] - mass) > 1e-12 * mass) return 0;
        ++m;
    }
    return m;
}

}  // namespace

double oracle_quantile(const Pmf& p, const CiConfig& cfg, std::uint64_t reps,
                       std::uint64_t seed, unsigned threads) {
    cfg.validate();
    if (const auto m = uniform_support(p); m > 0) {
        if (m == 1) return 0.0;
        // M_max takes values in {0, 1/m} with P(M_max = 1/m) given by
        // exceedance_uniform(n, m). Level 0 is never admissible, so 1/m is
        // returned whether it qualifies itself or only as the infimum.
        return 1.0 / static_cast<double>(m);
    }
    if (reps < 1) throw std::domain_error("oracle_quantile: reps must be >= 1");
    return empirical_upper_quantile(simulate_m_max(p, cfg.n, reps, seed, threads), cfg.alpha);
}

Pmf make_benchmark(const DistSpec& spec, std::uint64_t k, std::uint64_t n, double alpha) {
    const std::size_t kk = static_cast<std::size_t>(k);
    if (spec.kind == "zipf") return make_zipf(kk, spec.zipf_s);
    if (spec.kind == "geometric") return make_geometric(kk, spec.geometric_a);
    if (spec.kind == "negbin") return make_negative_binomial(kk, spec.negbin_l, spec.negbin_r);
    if (spec.kind == "betabin") return make_beta_binomial(kk, spec.betabin_a, spec.betabin_b);
    if (spec.kind == "uniform") return make_uniform(kk);
    if (spec.kind == "worstcase") {
        const Pmf w = worst_case_pmf(n, alpha);
        return w.padded(std::max<std::size_t>(kk, w.size()));
    }
    if (spec.kind == "file") return from_counts(read_counts_csv(spec.file));
    throw std::invalid_argument("unknown distribution '" + spec.kind + "'");
}

namespace {

std::uint64_t count_at_least(const std::vector<double>& values, double threshold) {
    return static_cast<std::uint64_t>(
        std::count_if(values.begin(), values.end(), [&](double v) { return v >= threshold; }));
}

double rate(std::uint64_t hits, std::uint64_t reps) {
    return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace

Table run_figure1(const DistSpec& spec, const SweepConfig& cfg, const std::vector<std::uint64_t>& ks) {
    if (cfg.reps < 1) throw std::invalid_argument("run_figure1: reps must be >= 1");
    const CiConfig base{cfg.n, cfg.alpha, std::nullopt};
    const UpperCi unbounded = ci_unbounded(base);
    std::map<std::uint64_t, UpperCi> bounded_cache;

    Table t;
    t.header = {"dist", "k", "alphabet", "n", "alpha", "rot", "bounded", "r_star_bounded",
                "unbounded", "r_star_unbounded", "oracle", "noncov_rot", "noncov_bounded",
                "noncov_unbounded", "reps", "seed"};
    for (auto k : ks) {
        const Pmf p = make_benchmark(spec, k, cfg.n, cfg.alpha);
        const std::uint64_t alphabet = p.size();
        auto it = bounded_cache.find(alphabet);
        if (it == bounded_cache.end())
            it = bounded_cache.emplace(alphabet, ci_bounded(CiConfig{cfg.n, cfg.alpha, alphabet})).first;
        const UpperCi& bounded = it->second;
        const double rot = rot_bonferroni(cfg.n, alphabet, cfg.alpha);

        const std::uint64_t row_seed = replicate_seed(cfg.seed, k);
        const auto values = simulate_m_max(p, cfg.n, cfg.reps, row_seed, cfg.threads);
        const double oracle = uniform_support(p) > 0
                                  ? oracle_quantile(p, base, cfg.reps, row_seed, cfg.threads)
                                  : empirical_upper_quantile(values, cfg.alpha);
        t.rows.push_back({spec.kind, format_number(k), format_number(alphabet), format_number(cfg.n),
                          format_number(cfg.alpha), format_number(rot), format_number(bounded.upper),
                          format_number(bounded.r_star), format_number(unbounded.upper),
                          format_number(unbounded.r_star), format_number(oracle),
                          format_number(rate(count_at_least(values, rot), cfg.reps)),
                          format_number(rate(count_at_least(values, bounded.upper), cfg.reps)),
                          format_number(rate(count_at_least(values, unbounded.upper), cfg.reps)),
                          format_number(cfg.reps), format_number(cfg.seed)});
    }
    return t;
}

Table run_figure2(const Pmf& data, const SweepConfig& cfg, const std::vector<std::uint64_t>& ns) {
    if (cfg.reps < 1) throw std::invalid_argument("run_figure2: reps must be >= 1");
    Table t;
    t.header = {"n", "alphabet", "alpha", "rot", "unbounded", "r_star", "oracle", "noncov_rot",
                "noncov_unbounded", "mean_m_max", "reps", "seed"};
    const std::uint64_t alphabet = data.size();
    for (auto n : ns) {
        const CiConfig cfg_n{n, cfg.alpha, std::nullopt};
        const UpperCi ours = ci_unbounded(cfg_n);
        const double rot = rot_bonferroni(n, alphabet, cfg.alpha);
        const auto values = simulate_m_max(data, n, cfg.reps, replicate_seed(cfg.seed, n), cfg.threads);
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(cfg.reps);
        t.rows.push_back({format_number(n), format_number(alphabet), format_number(cfg.alpha),
                          format_number(rot), format_number(ours.upper), format_number(ours.r_star),
                          format_number(empirical_upper_quantile(values, cfg.alpha)),
                          format_number(rate(count_at_least(values, rot), cfg.reps)),
                          format_number(rate(count_at_least(values, ours.upper), cfg.reps)),
                          format_number(mean), format_number(cfg.reps), format_number(cfg.seed)});
    }
    return t;
}

Table run_figure2(const std::string& counts_file, const SweepConfig& cfg,
                  const std::vector<std::uint64_t>& ns) {
    return run_figure2(from_counts(read_counts_csv(counts_file)), cfg, ns);
}

std::vector<DistSpec> benchmark_suite() {
    std::vector<DistSpec> out;
    for (const char* kind : {"zipf", "geometric", "negbin", "betabin", "uniform", "worstcase"}) {
        DistSpec d;
        d.kind = kind;
        out.push_back(d);
    }
    return out;
}

Table run_coverage_suite(const SweepConfig& cfg, std::uint64_t k) {
    if (cfg.reps < 1) throw std::invalid_argument("coverage suite: reps must be >= 1");
    const UpperCi unbounded = ci_unbounded(CiConfig{cfg.n, cfg.alpha, std::nullopt});
    const double se = std::sqrt(cfg.alpha * (1.0 - cfg.alpha) / static_cast<double>(cfg.reps));
    const double limit = cfg.alpha + 3.0 * se;
    Table t;
    t.header = {"dist", "alphabet", "n", "alpha", "unbounded", "noncov_unbounded", "bounded",
                "noncov_bounded", "limit", "pass", "reps", "seed"};
    for (const auto& spec : benchmark_suite()) {
        Pmf p = make_benchmark(spec, k, cfg.n, cfg.alpha);
        if (spec.kind == "worstcase") p = worst_case_pmf(cfg.n, cfg.alpha);
        const std::uint64_t alphabet = p.size();
        const UpperCi bounded = ci_bounded(CiConfig{cfg.n, cfg.alpha, alphabet});
        const auto values = simulate_m_max(p, cfg.n, cfg.reps, replicate_seed(cfg.seed, alphabet), cfg.threads);
        const double nc_u = rate(count_at_least(values, unbounded.upper), cfg.reps);
        const double nc_b = rate(count_at_least(values, bounded.upper), cfg.reps);
        const bool pass = nc_u <= limit && nc_b <= limit;
        t.rows.push_back({spec.kind, format_number(alphabet), format_number(cfg.n), format_number(cfg.alpha),
                          format_number(unbounded.upper), format_number(nc_u), format_number(bounded.upper),
                          format_number(nc_b), format_number(limit), pass ? "1" : "0",
                          format_number(cfg.reps), format_number(cfg.seed)});
    }
    return t;
}

}  // namespace unseen
