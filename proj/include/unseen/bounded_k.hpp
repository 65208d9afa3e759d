#ifndef UNSEEN_BOUNDED_K_HPP
#define UNSEEN_BOUNDED_K_HPP

#include "unseen/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace unseen {

// Critical point and inflection points of h(t) = t^r (1-t)^n, clamped to [0,1].
template <typename Scalar>
struct ConcavityBounds {
    Scalar t_star;
    Scalar t1;
    Scalar t2;
};

template <typename Scalar>
ConcavityBounds<Scalar> concavity_bounds(Scalar r, std::uint64_t n) {
    using std::sqrt;
    if (!(r >= Scalar(1))) throw std::domain_error("concavity_bounds: r must be >= 1");
    if (n < 1) throw std::domain_error("concavity_bounds: n must be >= 1");
    const Scalar nn = Scalar(n);
    const Scalar denom = r + nn - Scalar(1);
    if (!(denom > Scalar(0))) throw std::domain_error("concavity_bounds: r + n - 1 must be > 0");
    const Scalar t_star = r / (r + nn);
    const Scalar half = sqrt(r * nn / denom) / (r + nn);
    auto clamp01 = [](Scalar t) { return std::clamp(t, Scalar(0), Scalar(1)); };
    return {clamp01(t_star), clamp01(t_star - half), clamp01(t_star + half)};
}

/// Maximizer of the bounded-alphabet objective in structured form: one
/// optional low mass `a` in [0,t1], one optional high mass `b` in (t2,1],
/// `j` symbols sharing mass `q` in [t1,t2], and `zeros` empty symbols.
/// A value of 0 for `a` or `b` means the symbol is absent; `q` is 0 when j = 0.
struct StructuredMaximizer {
    double a = 0.0;
    double b = 0.0;
    double q = 0.0;
    std::uint64_t j = 0;
    std::uint64_t zeros = 0;

    double total_mass() const { return a + b + static_cast<double>(j) * q; }
    std::uint64_t alphabet_size() const {
        return (a > 0.0 ? 1 : 0) + (b > 0.0 ? 1 : 0) + j + zeros;
    }
};

struct BoundedExpectation {
    double value = 0.0;
    double log_value = -std::numeric_limits<double>::infinity();
    StructuredMaximizer witness;
};

/// E_{r,n}(Delta_k): the largest expected missing r-norm over distributions
/// on k symbols, by enumeration of the structured family.
BoundedExpectation e_r_bounded(double r, std::uint64_t n, std::uint64_t k);

/// Bounded-alphabet CI; requires cfg.k.
UpperCi ci_bounded(const CiConfig& cfg, const RGrid& grid = {});

}  // namespace unseen

#endif  // UNSEEN_BOUNDED_K_HPP
