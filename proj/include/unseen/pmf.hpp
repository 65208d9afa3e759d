#ifndef UNSEEN_PMF_HPP
#define UNSEEN_PMF_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unseen {

// Finite probability vector; index is the symbol id.
class Pmf {
public:
    static constexpr double kSumTolerance = 1e-9;

    Pmf() = default;

    explicit Pmf(Eigen::ArrayXd probs, std::vector<std::string> labels = {})
        : probs_(std::move(probs)), labels_(std::move(labels)) {
        if (probs_.size() < 1) throw std::invalid_argument("Pmf: empty support");
        if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(probs_.size()))
            throw std::invalid_argument("Pmf: label count does not match support");
        for (Eigen::Index i = 0; i < probs_.size(); ++i)
            if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i]))
                throw std::invalid_argument("Pmf: masses must be finite and nonnegative");
        if (std::abs(probs_.sum() - 1.0) > kSumTolerance)
            throw std::invalid_argument("Pmf: masses must sum to 1");
    }

    // Normalizes nonnegative weights into a Pmf.
    static Pmf from_weights(const Eigen::ArrayXd& w, std::vector<std::string> labels = {}) {
        const double total = w.sum();
        if (!(total > 0.0) || !std::isfinite(total))
            throw std::invalid_argument("Pmf: weights must have a positive finite sum");
        if ((w < 0.0).any()) throw std::invalid_argument("Pmf: negative weight");
        return Pmf(w / total, std::move(labels));
    }

    std::size_t size() const { return static_cast<std::size_t>(probs_.size()); }
    double operator[](std::size_t u) const { return probs_[static_cast<Eigen::Index>(u)]; }
    const Eigen::ArrayXd& probs() const { return probs_; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Same masses embedded in an alphabet of `k` symbols (zeros appended).
    Pmf padded(std::size_t k) const {
        if (k < size()) throw std::invalid_argument("Pmf::padded: k smaller than support");
        Eigen::ArrayXd p = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(k));
        p.head(probs_.size()) = probs_;
        return Pmf(std::move(p));
    }

private:
    Eigen::ArrayXd probs_;
    std::vector<std::string> labels_;
};

}  // namespace unseen

#endif  // UNSEEN_PMF_HPP
