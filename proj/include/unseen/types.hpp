#ifndef UNSEEN_TYPES_HPP
#define UNSEEN_TYPES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace unseen {

// Problem instance: n draws, non-coverage budget alpha, optional alphabet size.
struct CiConfig {
    std::uint64_t n = 1;
    double alpha = 0.05;
    std::optional<std::uint64_t> k;

    void validate() const {
        if (n < 1) throw std::domain_error("CiConfig: n must be >= 1");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("CiConfig: alpha must lie in (0,1)");
        if (k && *k < 1) throw std::domain_error("CiConfig: k must be >= 1");
    }
};

enum class CiMethod { unbounded, bounded, rot_bonferroni, oracle };

inline std::string_view to_string(CiMethod m) {
    switch (m) {
        case CiMethod::unbounded: return "unbounded";
        case CiMethod::bounded: return "bounded";
        case CiMethod::rot_bonferroni: return "rot_bonferroni";
        case CiMethod::oracle: return "oracle";
    }
    return "unknown";
}

// One-sided interval [0, upper] for the largest missing probability.
struct UpperCi {
    double upper = 1.0;
    double r_star = 1.0;
    double e_value = 1.0;
    CiMethod method = CiMethod::unbounded;
};

// Search space for the norm order r.
struct RGrid {
    double r_min = 1.0;
    double r_max = 0.0;  // 0 selects 10 ln(max(n,2)) + 20
    int points = 256;
    double refine_tol = 1e-10;
};

}  // namespace unseen

#endif  // UNSEEN_TYPES_HPP
