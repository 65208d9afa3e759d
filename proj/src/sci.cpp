#include "unseen/sci.hpp"

#include "unseen/bounded_k.hpp"
#include "unseen/normal.hpp"
#include "unseen/parallel.hpp"
#include "unseen/rnorm_ci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace unseen {

std::string_view to_string(RegionMethod m) {
    return m == RegionMethod::ours ? "ours" : "bonferroni";
}

Interval wald_ci_tail(std::uint64_t i, std::uint64_t n, double tail) {
    if (n < 1 || i > n) throw std::domain_error("wald_ci: need 0 <= i <= n, n >= 1");
    const double z = normal_upper_quantile(tail / 2.0);
    const double phat = static_cast<double>(i) / static_cast<double>(n);
    const double half = z * std::sqrt(phat * (1.0 - phat) / static_cast<double>(n));
    return {std::max(0.0, phat - half), std::min(1.0, phat + half)};
}

Interval wald_ci(std::uint64_t i, std::uint64_t n, double level) {
    if (!(level > 0.0 && level < 1.0)) throw std::domain_error("wald_ci: level must lie in (0,1)");
    return wald_ci_tail(i, n, 1.0 - level);
}

Interval exact_binomial_ci_tail(std::uint64_t i, std::uint64_t n, double tail) {
    if (n < 1 || i > n) throw std::domain_error("exact_binomial_ci: need 0 <= i <= n, n >= 1");
    if (!(tail > 0.0 && tail < 1.0)) throw std::domain_error("exact_binomial_ci: tail must lie in (0,1)");
    const double nd = static_cast<double>(n), id = static_cast<double>(i);
    // Root of an increasing function of p on [0,1].
    auto solve = [](auto&& f, double target) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    Interval out{0.0, 1.0};
    // P(X >= i; p) = I_p(i, n-i+1); P(X <= i; p) = 1 - I_p(i+1, n-i).
    if (i > 0) out.lo = solve([&](double p) { return incomplete_beta(id, nd - id + 1.0, p); }, tail / 2.0);
    if (i < n) out.hi = solve([&](double p) { return incomplete_beta(id + 1.0, nd - id, p); }, 1.0 - tail / 2.0);
    return out;
}

double unobserved_upper(std::uint64_t n, std::uint64_t k, double alpha, double c,
                        UnobservedBound kind) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("unobserved_upper: c must lie in [0,1]");
    if (c == 0.0) return 1.0;
    const double level_alpha = alpha * c;
    if (!(level_alpha < 1.0)) return 0.0;
    if (kind == UnobservedBound::bounded)
        return ci_bounded(CiConfig{n, level_alpha, k}).upper;
    return ci_unbounded(CiConfig{n, level_alpha, std::nullopt}).upper;
}

Theorem3Check theorem3_check(std::uint64_t n, std::uint64_t k, double alpha, double c,
                             const SciOptions& opts) {
    if (n < 1 || k < 1) throw std::domain_error("theorem3_check: n and k must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("theorem3_check: alpha must lie in (0,1)");
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("theorem3_check: c must lie in [0,1]");
    Theorem3Check out;
    out.c = c;
    if (c >= 1.0) {
        // No budget left for observed symbols.
        out.cond_a = out.cond_b = std::numeric_limits<double>::infinity();
        out.feasible = false;
        return out;
    }
    const double kd = static_cast<double>(k), nd = static_cast<double>(n);
    const double a_c = unobserved_upper(n, k, alpha, c, opts.unobserved);
    const double a_bc = rot_bonferroni(n, k, alpha);
    const double m = static_cast<double>(std::min(n, k));
    const double z0 = normal_upper_quantile(alpha / (2.0 * kd));
    const double zc = normal_upper_quantile(alpha * (1.0 - c) / (2.0 * m));
    // Expected number of unobserved symbols under the uniform distribution.
    const double w = k == 1 ? 0.0 : kd * std::exp(nd * std::log1p(-1.0 / kd));

    double d_unobs, d_obs;
    if (opts.form == ConditionForm::log_difference) {
        d_unobs = std::log(a_c) - std::log(a_bc);
        d_obs = std::log(zc) - std::log(z0);
    } else {
        d_unobs = a_c - a_bc;
        d_obs = zc - z0;
    }
    out.cond_a = w * d_unobs + (kd - w) * d_obs;
    out.cond_b = (kd - 1.0) * d_unobs + d_obs;
    out.feasible = out.cond_a <= 0.0 && out.cond_b <= 0.0;
    return out;
}

std::optional<double> choose_c(std::uint64_t n, std::uint64_t k, double alpha,
                               const SciOptions& opts) {
    for (int i = 999; i >= 1; --i) {
        const double c = i / 1000.0;
        if (theorem3_check(n, k, alpha, c, opts).feasible) return c;
    }
    return std::nullopt;
}

namespace {

void check_counts(const SampleCounts& counts, std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("region: k must be >= 1");
    if (counts.n < 1) throw std::invalid_argument("region: empty sample");
    std::uint64_t total = 0;
    for (const auto& sc : counts.counts) {
        if (sc.symbol >= k) throw std::invalid_argument("region: symbol outside the alphabet");
        total += sc.count;
    }
    if (total != counts.n) throw std::invalid_argument("region: counts do not sum to n");
}

ConfidenceRegion assemble(const SampleCounts& counts, std::uint64_t k, double tail,
                          Interval unobserved, BinomialFamily family) {
    ConfidenceRegion region;
    region.n = counts.n;
    region.intervals.assign(k, unobserved);
    std::unordered_map<std::uint64_t, Interval> by_count;
    for (const auto& sc : counts.counts) {
        auto it = by_count.find(sc.count);
        if (it == by_count.end()) {
            const Interval iv = family == BinomialFamily::wald
                                    ? wald_ci_tail(sc.count, counts.n, tail)
                                    : exact_binomial_ci_tail(sc.count, counts.n, tail);
            it = by_count.emplace(sc.count, iv).first;
        }
        region.intervals[sc.symbol] = it->second;
    }
    return region;
}

}  // namespace

ConfidenceRegion build_region(const SampleCounts& counts, std::uint64_t k, double alpha,
                              double c, const SciOptions& opts) {
    check_counts(counts, k);
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("build_region: alpha must lie in (0,1)");
    if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("build_region: c must lie in [0,1)");
    const double m = static_cast<double>(std::min(counts.n, k));
    const double upper = unobserved_upper(counts.n, k, alpha, c, opts.unobserved);
    auto region = assemble(counts, k, alpha * (1.0 - c) / m, {0.0, upper}, opts.binomial);
    region.c = c;
    region.alpha = alpha;
    region.method = RegionMethod::ours;
    return region;
}

ConfidenceRegion build_region_bonferroni(const SampleCounts& counts, std::uint64_t k,
                                         double alpha, const SciOptions& opts) {
    check_counts(counts, k);
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("build_region: alpha must lie in (0,1)");
    const double kd = static_cast<double>(k);
    auto region = assemble(counts, k, alpha / kd, {0.0, rot_bonferroni(counts.n, k, alpha)},
                           opts.binomial);
    region.c = 0.0;
    region.alpha = alpha;
    region.method = RegionMethod::bonferroni;
    return region;
}

double log_volume(const ConfidenceRegion& region) {
    double total = 0.0;
    for (const auto& iv : region.intervals) total += std::log(std::max(iv.length(), 1e-300));
    return total;
}

bool region_covers(const ConfidenceRegion& region, const Pmf& p) {
    if (p.size() != region.size())
        throw std::invalid_argument("region_covers: distribution and region sizes differ");
    for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j] < region.intervals[j].lo || p[j] > region.intervals[j].hi) return false;
    return true;
}

Table region_table(const ConfidenceRegion& region, const SampleCounts& counts) {
    Table t;
    t.header = {"symbol", "count", "lo", "hi"};
    t.rows.reserve(region.size());
    const auto dense = counts.to_dense(region.size());
    for (std::size_t j = 0; j < region.size(); ++j)
        t.rows.push_back({format_number(static_cast<std::uint64_t>(j)), format_number(dense[j]),
                          format_number(region.intervals[j].lo), format_number(region.intervals[j].hi)});
    return t;
}

namespace {

Pmf sweep_pmf(const RegionSweepConfig& cfg, std::uint64_t k) {
    if (cfg.dist == "zipf") return make_zipf(k, cfg.zipf_s);
    if (cfg.dist == "uniform") return make_uniform(k);
    throw std::invalid_argument("region sweep: unknown distribution '" + cfg.dist + "'");
}

struct RegionStats {
    double log_volume_ours = 0.0;
    double log_volume_bonferroni = 0.0;
    std::uint64_t covered_ours = 0;
    std::uint64_t covered_bonferroni = 0;
};

// Per-replicate evaluation of both regions; c = nullopt uses the Bonferroni
// region for both columns.
std::vector<RegionStats> evaluate_regions(const RegionSweepConfig& cfg, const Pmf& p,
                                          std::uint64_t k, const std::vector<std::optional<double>>& cs) {
    const AliasSampler sampler(p);
    const std::uint64_t row_seed = replicate_seed(cfg.seed, k);
    constexpr std::size_t kBlock = 64;
    const std::size_t blocks = (cfg.reps + kBlock - 1) / kBlock;
    // results[c index][replicate]
    std::vector<std::vector<RegionStats>> per(cs.size(), std::vector<RegionStats>(cfg.reps));
    parallel_for(blocks, cfg.threads, [&](std::size_t b) {
        std::vector<std::uint64_t> scratch(p.size(), 0);
        const std::size_t end = std::min<std::size_t>(cfg.reps, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            std::mt19937_64 rng(replicate_seed(row_seed, i));
            const auto counts = sampler.draw(cfg.n, rng, scratch);
            const auto bonf = build_region_bonferroni(counts, k, cfg.alpha, cfg.options);
            const double lv_bonf = log_volume(bonf);
            const bool cov_bonf = region_covers(bonf, p);
            for (std::size_t ci = 0; ci < cs.size(); ++ci) {
                RegionStats s;
                s.log_volume_bonferroni = lv_bonf;
                s.covered_bonferroni = cov_bonf;
                if (cs[ci]) {
                    const auto ours = build_region(counts, k, cfg.alpha, *cs[ci], cfg.options);
                    s.log_volume_ours = log_volume(ours);
                    s.covered_ours = region_covers(ours, p);
                } else {
                    s.log_volume_ours = lv_bonf;
                    s.covered_ours = cov_bonf;
                }
                per[ci][i] = s;
            }
        }
    });
    std::vector<RegionStats> out(cs.size());
    const double reps = static_cast<double>(cfg.reps);
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        RegionStats acc;
        for (const auto& s : per[ci]) {
            acc.log_volume_ours += s.log_volume_ours;
            acc.log_volume_bonferroni += s.log_volume_bonferroni;
            acc.covered_ours += s.covered_ours;
            acc.covered_bonferroni += s.covered_bonferroni;
        }
        acc.log_volume_ours /= reps;
        acc.log_volume_bonferroni /= reps;
        out[ci] = acc;
    }
    return out;
}

const std::vector<std::string> kRegionHeader = {
    "dist", "k", "n", "alpha", "c", "mean_log_volume_ours", "mean_log_volume_bonferroni",
    "coverage_ours", "coverage_bonferroni", "reps", "seed"};

std::vector<std::string> region_row(const RegionSweepConfig& cfg, std::uint64_t k,
                                    std::optional<double> c, const RegionStats& s) {
    const double reps = static_cast<double>(cfg.reps);
    return {cfg.dist,
            format_number(k),
            format_number(cfg.n),
            format_number(cfg.alpha),
            c ? format_number(*c) : std::string("none"),
            format_number(s.log_volume_ours),
            format_number(s.log_volume_bonferroni),
            format_number(static_cast<double>(s.covered_ours) / reps),
            format_number(static_cast<double>(s.covered_bonferroni) / reps),
            format_number(cfg.reps),
            format_number(cfg.seed)};
}

}  // namespace

Table run_region_k_sweep(const RegionSweepConfig& cfg, const std::vector<std::uint64_t>& ks) {
    if (cfg.reps < 1) throw std::invalid_argument("region sweep: reps must be >= 1");
    Table t;
    t.header = kRegionHeader;
    for (auto k : ks) {
        const Pmf p = sweep_pmf(cfg, k);
        const auto c = choose_c(cfg.n, k, cfg.alpha, cfg.options);
        const auto stats = evaluate_regions(cfg, p, k, {c});
        t.rows.push_back(region_row(cfg, k, c, stats[0]));
    }
    return t;
}

Table run_region_c_sweep(const RegionSweepConfig& cfg, std::uint64_t k,
                         const std::vector<double>& cs) {
    if (cfg.reps < 1) throw std::invalid_argument("region sweep: reps must be >= 1");
    const Pmf p = sweep_pmf(cfg, k);
    std::vector<std::optional<double>> grid(cs.begin(), cs.end());
    const auto stats = evaluate_regions(cfg, p, k, grid);
    Table t;
    t.header = kRegionHeader;
    for (std::size_t i = 0; i < cs.size(); ++i) t.rows.push_back(region_row(cfg, k, cs[i], stats[i]));
    return t;
}

}  // namespace unseen
