#include "unseen/bounded_k.hpp"

#include "unseen/optimize.hpp"
#include "unseen/rnorm_ci.hpp"

#include <array>
#include <limits>
#include <vector>

namespace unseen {
namespace {

constexpr double kFeasTol = 1e-14;
constexpr double kGoldenTol = 1e-10;
constexpr int kScanPoints = 9;

// h(t) / h(t*), so that sums stay representable when h(t*) underflows.
struct Summand {
    double r;
    double n;
    double shift;
    double operator()(double t) const {
        const double l = log_power_term(t, r, n);
        return l == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(l - shift);
    }
};

struct Candidate {
    double value = -1.0;
    double a = 0.0;
    double b = 0.0;
    double q = 0.0;
};

class StructuredSearch {
public:
    StructuredSearch(double r, std::uint64_t n, std::uint64_t k)
        : k_(k), bounds_(concavity_bounds(r, n)) {
        const double nd = static_cast<double>(n);
        h_ = {r, nd, log_power_term(bounds_.t_star, r, nd)};
    }

    BoundedExpectation run() const {
        const double t1 = bounds_.t1;
        std::uint64_t j_cap = k_;
        if (t1 > 0.0) {
            const double per = std::floor(1.0 / t1 * (1.0 + kFeasTol));
            if (per < static_cast<double>(j_cap)) j_cap = static_cast<std::uint64_t>(per);
        }
        const double r = h_.r;
        if (r > 1.0) {
            // For fixed leftover mass s the concave-region term s*phi(s/j) is
            // unimodal in j with peak at s/q*, and s <= 1.
            const double lim = std::ceil(1.0 / q_star(r, static_cast<std::uint64_t>(h_.n))) + 1.0;
            if (lim < static_cast<double>(j_cap)) j_cap = static_cast<std::uint64_t>(lim);
        }

        // Cheap sub-problems first so the bound below can prune the 2-D ones.
        std::vector<std::array<Candidate, 4>> results(j_cap + 1);
        double best = -1.0;
        for (std::uint64_t j = 0; j <= j_cap; ++j) {
            for (int flags : {0, 1, 2}) {
                if (!fits(j, flags)) continue;
                results[j][flags] = solve(j, flags);
                best = std::max(best, results[j][flags].value);
            }
        }
        for (std::uint64_t j = 0; j <= j_cap; ++j) {
            if (!fits(j, 3)) continue;
            if (upper_bound_both(j) < best) continue;
            results[j][3] = solve(j, 3);
            best = std::max(best, results[j][3].value);
        }

        // Ties go to the smallest j, then to the fewest convex-region symbols.
        Candidate top;
        std::uint64_t top_j = 0;
        for (std::uint64_t j = 0; j <= j_cap; ++j)
            for (const auto& c : results[j])
                if (c.value > top.value) {
                    top = c;
                    top_j = j;
                }

        BoundedExpectation out;
        out.log_value = top.value > 0.0 ? std::log(top.value) + h_.shift
                                        : -std::numeric_limits<double>::infinity();
        out.value = std::exp(out.log_value);
        out.witness.a = top.a;
        out.witness.b = top.b;
        out.witness.j = top_j;
        out.witness.q = top_j > 0 ? top.q : 0.0;
        const std::uint64_t used = top_j + (top.a > 0.0 ? 1 : 0) + (top.b > 0.0 ? 1 : 0);
        out.witness.zeros = k_ - used;
        return out;
    }

private:
    bool fits(std::uint64_t j, int flags) const {
        const std::uint64_t extra = (flags & 1 ? 1 : 0) + (flags & 2 ? 1 : 0);
        return j + extra >= 1 && j + extra <= k_;
    }

    double shared(std::uint64_t j, double s) const {
        return j == 0 ? 0.0 : static_cast<double>(j) * h_(s / static_cast<double>(j));
    }

    // Leftover mass s must split into j equal masses inside [t1, t2].
    bool shared_ok(std::uint64_t j, double s) const {
        if (j == 0) return std::abs(s) <= kFeasTol;
        const double q = s / static_cast<double>(j);
        return q >= bounds_.t1 - kFeasTol && q <= bounds_.t2 + kFeasTol;
    }

    double upper_bound_both(std::uint64_t j) const {
        const double a_max = std::min(bounds_.t1, 1.0 - bounds_.t2);
        if (a_max < 0.0) return -1.0;
        double shared_bound = 0.0;
        if (j > 0) {
            const double q_max = std::min(bounds_.t2, (1.0 - bounds_.t2) / static_cast<double>(j));
            shared_bound = static_cast<double>(j) * h_(std::min(bounds_.t_star, q_max));
        }
        return h_(a_max) + h_(bounds_.t2) + shared_bound;
    }

    Candidate solve(std::uint64_t j, int flags) const {
        const double t1 = bounds_.t1, t2 = bounds_.t2;
        const double jd = static_cast<double>(j);
        Candidate c;
        switch (flags) {
            case 0: {
                const double q = 1.0 / jd;
                if (shared_ok(j, 1.0)) c = {shared(j, 1.0), 0.0, 0.0, q};
                break;
            }
            case 1: {
                const double lo = std::max(0.0, 1.0 - jd * t2);
                const double hi = std::min(t1, 1.0 - jd * t1);
                if (hi < lo - kFeasTol) break;
                auto f = [&](double a) { return h_(a) + shared(j, 1.0 - a); };
                auto e = scan_then_golden_max(f, lo, std::max(lo, hi), kScanPoints, kGoldenTol);
                c = {e.value, e.x, 0.0, j ? (1.0 - e.x) / jd : 0.0};
                break;
            }
            case 2: {
                const double lo = std::max(t2, 1.0 - jd * t2);
                const double hi = std::min(1.0, 1.0 - jd * t1);
                if (hi < lo - kFeasTol) break;
                auto f = [&](double b) { return h_(b) + shared(j, 1.0 - b); };
                auto e = scan_then_golden_max(f, lo, std::max(lo, hi), kScanPoints, kGoldenTol);
                c = {e.value, 0.0, e.x, j ? (1.0 - e.x) / jd : 0.0};
                break;
            }
            case 3: {
                const double a_hi = std::min(t1, 1.0 - t2 - jd * t1);
                if (a_hi < -kFeasTol) break;
                auto inner = [&](double a) {
                    const double lo = std::max(t2, 1.0 - a - jd * t2);
                    const double hi = std::max(lo, std::min(1.0, 1.0 - a - jd * t1));
                    auto g = [&](double b) { return h_(b) + shared(j, 1.0 - a - b); };
                    return scan_then_golden_max(g, lo, hi, kScanPoints, kGoldenTol);
                };
                auto outer = scan_then_golden_max(
                    [&](double a) { return h_(a) + inner(a).value; }, 0.0, std::max(0.0, a_hi),
                    kScanPoints, kGoldenTol);
                const double a = outer.x;
                const double b = inner(a).x;
                c = {outer.value, a, b, j ? (1.0 - a - b) / jd : 0.0};
                break;
            }
        }
        return c;
    }

    Summand h_;
    std::uint64_t k_;
    ConcavityBounds<double> bounds_;
};

}  // namespace

BoundedExpectation e_r_bounded(double r, std::uint64_t n, std::uint64_t k) {
    if (!(r >= 1.0)) throw std::domain_error("e_r_bounded: r must be >= 1");
    if (n < 1) throw std::domain_error("e_r_bounded: n must be >= 1");
    if (k < 1) throw std::domain_error("e_r_bounded: k must be >= 1");
    if (k == 1) {
        // The single symbol carries all mass and is always observed.
        BoundedExpectation out;
        const auto cb = concavity_bounds(r, n);
        if (cb.t2 < 1.0) {
            out.witness.b = 1.0;
        } else {
            out.witness.j = 1;
            out.witness.q = 1.0;
        }
        return out;
    }
    return StructuredSearch(r, n, k).run();
}

UpperCi ci_bounded(const CiConfig& cfg, const RGrid& grid) {
    cfg.validate();
    if (!cfg.k) throw std::invalid_argument("ci_bounded: alphabet size k is required");
    const std::uint64_t n = cfg.n, k = *cfg.k;
    if (k == 1) return UpperCi{0.0, 1.0, 0.0, CiMethod::bounded};

    // Uniform distributions on j <= k symbols are feasible, so the best of
    // them lower-bounds the worst case.
    auto log_lower = [n, k](double r) {
        if (r == 1.0) return std::log1p(-1.0 / static_cast<double>(k)) * static_cast<double>(n);
        const double target = 1.0 / q_star(r, n);
        double best = -std::numeric_limits<double>::infinity();
        for (double j : {std::floor(target), std::ceil(target)}) {
            j = std::clamp(j, 1.0, static_cast<double>(k));
            best = std::max(best, log_power_term(1.0 / j, r - 1.0, static_cast<double>(n)));
        }
        return best;
    };
    auto log_exact = [n, k](double r) { return e_r_bounded(r, n, k).log_value; };
    auto out = minimize_over_r(n, cfg.alpha, grid, log_exact, log_lower);
    out.method = CiMethod::bounded;
    return out;
}

}  // namespace unseen
