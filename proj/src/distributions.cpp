#include "unseen/distributions.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace unseen {
namespace {

Eigen::Index as_index(std::size_t k) { return static_cast<Eigen::Index>(k); }

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

// Weights given in log space, shifted by their maximum before exponentiating.
Pmf from_log_weights(Eigen::ArrayXd logw) {
    const double top = logw.maxCoeff();
    return Pmf::from_weights((logw - top).exp());
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Pmf make_uniform(std::size_t k) {
    require(k >= 1, "make_uniform: k must be >= 1");
    return Pmf(Eigen::ArrayXd::Constant(as_index(k), 1.0 / static_cast<double>(k)));
}

Pmf make_zipf(std::size_t k, double s) {
    require(k >= 1, "make_zipf: k must be >= 1");
    require(s >= 0.0 && std::isfinite(s), "make_zipf: s must be >= 0");
    const Eigen::ArrayXd u = Eigen::ArrayXd::LinSpaced(as_index(k), 1.0, static_cast<double>(k));
    return from_log_weights(-s * u.log());
}

Pmf make_geometric(std::size_t k, double a) {
    require(k >= 1, "make_geometric: k must be >= 1");
    require(a > 0.0 && a < 1.0, "make_geometric: a must lie in (0,1)");
    const Eigen::ArrayXd u = Eigen::ArrayXd::LinSpaced(as_index(k), 1.0, static_cast<double>(k));
    return from_log_weights((u - 1.0) * std::log1p(-a) + std::log(a));
}

Pmf make_negative_binomial(std::size_t k, double l, double rr) {
    require(k >= 1, "make_negative_binomial: k must be >= 1");
    require(l >= 1.0 && std::isfinite(l), "make_negative_binomial: l must be >= 1");
    require(rr > 0.0 && rr < 1.0, "make_negative_binomial: r must lie in (0,1)");
    // C(u+l-1, u) r^u (1-r)^l on u = 1..k.
    Eigen::ArrayXd logw(as_index(k));
    for (std::size_t i = 0; i < k; ++i) {
        const double u = static_cast<double>(i + 1);
        logw[as_index(i)] = std::lgamma(u + l) - std::lgamma(u + 1.0) - std::lgamma(l) +
                           u * std::log(rr) + l * std::log1p(-rr);
    }
    return from_log_weights(std::move(logw));
}

Pmf make_beta_binomial(std::size_t k, double a, double b) {
    require(k >= 1, "make_beta_binomial: k must be >= 1");
    require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
            "make_beta_binomial: a and b must be > 0");
    auto log_beta = [](double x, double y) {
        return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
    };
    const double kd = static_cast<double>(k);
    Eigen::ArrayXd logw(as_index(k + 1));
    for (std::size_t i = 0; i <= k; ++i) {
        const double u = static_cast<double>(i);
        const double log_choose = std::lgamma(kd + 1.0) - std::lgamma(u + 1.0) - std::lgamma(kd - u + 1.0);
        logw[as_index(i)] = log_choose + log_beta(u + a, kd - u + b) - log_beta(a, b);
    }
    return from_log_weights(std::move(logw));
}

Pmf from_counts(const std::vector<CountRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_counts: no rows");
    Eigen::ArrayXd w(as_index(rows.size()));
    std::vector<std::string> labels;
    labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].count < 0) throw std::invalid_argument("from_counts: negative count for '" + rows[i].label + "'");
        w[as_index(i)] = static_cast<double>(rows[i].count);
        labels.push_back(rows[i].label);
    }
    if (!(w.sum() > 0.0)) throw std::invalid_argument("from_counts: all counts are zero");
    return Pmf::from_weights(w, std::move(labels));
}

std::vector<CountRow> parse_counts_csv(const std::string& text) {
    std::vector<CountRow> rows;
    std::unordered_map<std::string, std::size_t> index;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto comma = body.rfind(',');
        if (comma == std::string::npos)
            throw std::runtime_error("counts csv: line " + std::to_string(line_no) + ": expected label,count");
        std::string label = trim(std::string_view(body).substr(0, comma));
        if (label.size() >= 2 && label.front() == '"' && label.back() == '"')
            label = label.substr(1, label.size() - 2);
        const std::string field = trim(std::string_view(body).substr(comma + 1));
        std::int64_t count = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), count);
        const bool numeric = ec == std::errc() && ptr == field.data() + field.size();
        if (!numeric) {
            if (first_content) {
                first_content = false;
                continue;  // header
            }
            throw std::runtime_error("counts csv: line " + std::to_string(line_no) + ": bad count '" + field + "'");
        }
        first_content = false;
        if (count < 0)
            throw std::runtime_error("counts csv: line " + std::to_string(line_no) + ": negative count");
        auto [it, inserted] = index.emplace(label, rows.size());
        if (inserted)
            rows.push_back({label, count});
        else
            rows[it->second].count += count;
    }
    return rows;
}

std::vector<CountRow> read_counts_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open counts file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_counts_csv(buf.str());
}

std::uint64_t SampleCounts::count(std::uint64_t symbol) const {
    auto it = std::lower_bound(counts.begin(), counts.end(), symbol,
                               [](const SymbolCount& c, std::uint64_t s) { return c.symbol < s; });
    return it != counts.end() && it->symbol == symbol ? it->count : 0;
}

SampleCounts SampleCounts::from_dense(const std::vector<std::uint64_t>& dense) {
    SampleCounts out;
    for (std::size_t u = 0; u < dense.size(); ++u) {
        if (dense[u] == 0) continue;
        out.counts.push_back({u, dense[u]});
        out.n += dense[u];
    }
    return out;
}

std::vector<std::uint64_t> SampleCounts::to_dense(std::size_t k) const {
    std::vector<std::uint64_t> dense(k, 0);
    for (const auto& c : counts) {
        if (c.symbol >= k) throw std::invalid_argument("SampleCounts: symbol outside alphabet");
        dense[c.symbol] = c.count;
    }
    return dense;
}

AliasSampler::AliasSampler(const Pmf& p) : prob_(p.size()), alias_(p.size()) {
    const std::size_t k = p.size();
    std::vector<double> scaled(k);
    std::vector<std::size_t> small, large;
    std::size_t heaviest = 0;
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i] = p[i] * static_cast<double>(k);
        (scaled[i] < 1.0 ? small : large).push_back(i);
        if (p[i] > p[heaviest]) heaviest = i;
    }
    while (!small.empty() && !large.empty()) {
        const auto s = small.back();
        small.pop_back();
        const auto l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (auto l : large) {
        prob_[l] = 1.0;
        alias_[l] = l;
    }
    // Rounding leftovers; zero-mass symbols must stay undrawable.
    for (auto s : small) {
        prob_[s] = p[s] > 0.0 ? 1.0 : 0.0;
        alias_[s] = p[s] > 0.0 ? s : heaviest;
    }
}

SampleCounts sample(const Pmf& p, std::uint64_t n, std::uint64_t seed) {
    AliasSampler sampler(p);
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> scratch(p.size(), 0);
    return sampler.draw(n, rng, scratch);
}

}  // namespace unseen
