#ifndef UNSEEN_DISTRIBUTIONS_HPP
#define UNSEEN_DISTRIBUTIONS_HPP

#include "unseen/pmf.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace unseen {

// Benchmark distributions. Geometric and negative binomial live on {1..k}
// and are renormalized after truncation; beta-binomial lives on {0..k}
// (k+1 symbols).
Pmf make_uniform(std::size_t k);
Pmf make_zipf(std::size_t k, double s);
Pmf make_geometric(std::size_t k, double a);
Pmf make_negative_binomial(std::size_t k, double l, double rr);
Pmf make_beta_binomial(std::size_t k, double a, double b);

struct CountRow {
    std::string label;
    std::int64_t count = 0;
};

/// Empirical distribution proportional to the counts; labels preserved.
Pmf from_counts(const std::vector<CountRow>& rows);

/// Reads `label,count` rows. A non-numeric first row is treated as a
/// header, blank lines are skipped and duplicate labels are summed.
std::vector<CountRow> read_counts_csv(const std::string& path);
std::vector<CountRow> parse_counts_csv(const std::string& text);

struct SymbolCount {
    std::uint64_t symbol;
    std::uint64_t count;
};

// Observed sample summarized as counts of the symbols that appeared,
// sorted by symbol id.
struct SampleCounts {
    std::vector<SymbolCount> counts;
    std::uint64_t n = 0;

    std::uint64_t count(std::uint64_t symbol) const;
    std::size_t distinct() const { return counts.size(); }

    static SampleCounts from_dense(const std::vector<std::uint64_t>& dense);
    std::vector<std::uint64_t> to_dense(std::size_t k) const;
};

/// Walker/Vose alias table for O(1) draws.
class AliasSampler {
public:
    explicit AliasSampler(const Pmf& p);

    template <typename Rng>
    std::uint64_t operator()(Rng& rng) const {
        std::uniform_int_distribution<std::uint64_t> pick(0, prob_.size() - 1);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        const std::uint64_t i = pick(rng);
        return coin(rng) < prob_[i] ? i : alias_[i];
    }

    std::size_t size() const { return prob_.size(); }

    /// n draws into `scratch` (size k, zeroed on entry and on return).
    template <typename Rng>
    SampleCounts draw(std::uint64_t n, Rng& rng, std::vector<std::uint64_t>& scratch) const {
        std::vector<std::uint64_t> touched;
        touched.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, prob_.size())));
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto u = (*this)(rng);
            if (scratch[u]++ == 0) touched.push_back(u);
        }
        std::sort(touched.begin(), touched.end());
        SampleCounts out;
        out.n = n;
        out.counts.reserve(touched.size());
        for (auto u : touched) {
            out.counts.push_back({u, scratch[u]});
            scratch[u] = 0;
        }
        return out;
    }

private:
    std::vector<double> prob_;
    std::vector<std::uint64_t> alias_;
};

/// n independent draws from p; deterministic in (p, n, seed).
SampleCounts sample(const Pmf& p, std::uint64_t n, std::uint64_t seed);

}  // namespace unseen

#endif  // UNSEEN_DISTRIBUTIONS_HPP
