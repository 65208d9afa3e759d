#ifndef UNSEEN_SCI_HPP
#define UNSEEN_SCI_HPP

#include "unseen/distributions.hpp"
#include "unseen/pmf.hpp"
#include "unseen/table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace unseen {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
};

enum class RegionMethod { ours, bonferroni };
enum class BinomialFamily { wald, exact };
enum class UnobservedBound { unbounded, bounded };
enum class ConditionForm { log_difference, raw_difference };

std::string_view to_string(RegionMethod m);

struct SciOptions {
    BinomialFamily binomial = BinomialFamily::wald;
    UnobservedBound unobserved = UnobservedBound::unbounded;
    ConditionForm form = ConditionForm::log_difference;
};

/// Normal-approximation interval centered at i/n, clipped to [0,1].
Interval wald_ci(std::uint64_t i, std::uint64_t n, double level);
/// Same, parameterized by the two-sided miss probability 1 - level.
Interval wald_ci_tail(std::uint64_t i, std::uint64_t n, double tail);
/// Clopper-Pearson interval with two-sided miss probability `tail`.
Interval exact_binomial_ci_tail(std::uint64_t i, std::uint64_t n, double tail);

// Rectangular region over all k symbols.
struct ConfidenceRegion {
    std::vector<Interval> intervals;
    double c = 0.0;
    double alpha = 0.05;
    RegionMethod method = RegionMethod::ours;
    std::uint64_t n = 0;

    std::size_t size() const { return intervals.size(); }
};

struct Theorem3Check {
    double c = 0.0;
    double cond_a = 0.0;
    double cond_b = 0.0;
    bool feasible = false;
};

/// Upper end A_{n,c} of the unobserved-symbol interval at level 1 - alpha*c;
/// 1 when c = 0.
double unobserved_upper(std::uint64_t n, std::uint64_t k, double alpha, double c,
                        UnobservedBound kind = UnobservedBound::unbounded);

/// Sufficient conditions for the split-budget region to beat the
/// Bonferroni region in expected log-volume, for every p on k symbols.
Theorem3Check theorem3_check(std::uint64_t n, std::uint64_t k, double alpha, double c,
                             const SciOptions& opts = {});

/// Largest c on the grid {0.001, ..., 0.999} passing theorem3_check, or
/// nullopt if none does.
std::optional<double> choose_c(std::uint64_t n, std::uint64_t k, double alpha,
                               const SciOptions& opts = {});

/// Observed symbols: binomial intervals at level 1 - alpha(1-c)/min(n,k).
/// Unobserved symbols: [0, A_{n,c}].
ConfidenceRegion build_region(const SampleCounts& counts, std::uint64_t k, double alpha,
                              double c, const SciOptions& opts = {});

/// Observed symbols at level 1 - alpha/k; unobserved get the
/// Bonferroni-corrected rule of three.
ConfidenceRegion build_region_bonferroni(const SampleCounts& counts, std::uint64_t k,
                                         double alpha, const SciOptions& opts = {});

double log_volume(const ConfidenceRegion& region);
bool region_covers(const ConfidenceRegion& region, const Pmf& p);

/// CSV `symbol,count,lo,hi` for the region.
Table region_table(const ConfidenceRegion& region, const SampleCounts& counts);

struct RegionSweepConfig {
    std::string dist = "zipf";  // zipf | uniform
    double zipf_s = 1.01;
    std::uint64_t n = 1000;
    double alpha = 0.05;
    std::uint64_t reps = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    SciOptions options;
};

/// Mean log-volume and coverage of both regions over a k grid, with c from
/// choose_c at every k (Bonferroni fallback when infeasible).
Table run_region_k_sweep(const RegionSweepConfig& cfg, const std::vector<std::uint64_t>& ks);

/// Same quantities over a c grid at fixed k.
Table run_region_c_sweep(const RegionSweepConfig& cfg, std::uint64_t k,
                         const std::vector<double>& cs);

}  // namespace unseen

#endif  // UNSEEN_SCI_HPP
