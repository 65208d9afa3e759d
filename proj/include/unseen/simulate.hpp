#ifndef UNSEEN_SIMULATE_HPP
#define UNSEEN_SIMULATE_HPP

#include "unseen/distributions.hpp"
#include "unseen/pmf.hpp"
#include "unseen/table.hpp"
#include "unseen/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace unseen {

/// Largest mass among symbols absent from the sample; 0 if none is absent.
double m_max(const Pmf& p, const SampleCounts& counts);

/// Sum of r-th powers of the missing masses.
double m_r(const Pmf& p, const SampleCounts& counts, double r);

struct SimulationReport {
    std::uint64_t reps = 0;
    std::uint64_t non_coverage = 0;
    double coverage_rate = 1.0;
    double mean_m_max = 0.0;
    double quantile_1_minus_alpha = 0.0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
};

/// M_max of `reps` independent samples of size n; replicate i is seeded
/// from (seed, i), so the result does not depend on `threads`.
std::vector<double> simulate_m_max(const Pmf& p, std::uint64_t n, std::uint64_t reps,
                                   std::uint64_t seed, unsigned threads = 1);

/// Smallest observed value v with #(values >= v)/R <= alpha; the largest
/// observed value if none qualifies.
double empirical_upper_quantile(std::vector<double> values, double alpha);

SimulationReport coverage(const Pmf& p, const CiConfig& cfg, double threshold,
                          std::uint64_t reps, std::uint64_t seed, unsigned threads = 1);

/// (1-alpha)-quantile of M_max under the known p. Uniform distributions
/// (all nonzero masses equal) are handled exactly.
double oracle_quantile(const Pmf& p, const CiConfig& cfg, std::uint64_t reps,
                       std::uint64_t seed, unsigned threads = 1);

struct DistSpec {
    std::string kind = "zipf";  // zipf|geometric|negbin|betabin|uniform|worstcase|file
    double zipf_s = 1.01;
    double geometric_a = 0.4;
    double negbin_l = 1.0;
    double negbin_r = 0.003;
    double betabin_a = 2.0;
    double betabin_b = 2.0;
    std::string file;
};

/// Distribution for benchmark `spec` at alphabet size k. The worst case is
/// uniform over m_alpha symbols padded with zeros to max(k, m_alpha); the
/// beta-binomial has k+1 symbols.
Pmf make_benchmark(const DistSpec& spec, std::uint64_t k, std::uint64_t n, double alpha);

struct SweepConfig {
    std::uint64_t n = 1000;
    double alpha = 0.05;
    std::uint64_t reps = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// CI lengths over an alphabet-size grid: rule of three, bounded,
/// unbounded and oracle, with empirical non-coverage of each.
Table run_figure1(const DistSpec& spec, const SweepConfig& cfg, const std::vector<std::uint64_t>& ks);

/// Rule of three vs the unbounded CI on count data over a sample-size grid.
/// Missing probabilities are frequencies in the full data set.
Table run_figure2(const std::string& counts_file, const SweepConfig& cfg,
                  const std::vector<std::uint64_t>& ns);
Table run_figure2(const Pmf& data, const SweepConfig& cfg, const std::vector<std::uint64_t>& ns);

/// The six benchmarks used by the coverage suite.
std::vector<DistSpec> benchmark_suite();

/// Empirical non-coverage of the unbounded and bounded CIs for every
/// benchmark at alphabet size k (the worst case at its own m_alpha), with
/// the alpha + 3 SE acceptance limit.
Table run_coverage_suite(const SweepConfig& cfg, std::uint64_t k);

}  // namespace unseen

#endif  // UNSEEN_SIMULATE_HPP
