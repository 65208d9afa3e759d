#include "unseen/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace unseen {
namespace {

template <int N>
double polynomial(const double (&c)[N], double x) {
    double v = c[N - 1];
    for (int i = N - 2; i >= 0; --i) v = v * x + c[i];
    return v;
}

// Wichura (1988), Algorithm AS241.
double ppnd16(double p) {
    static constexpr double a[] = {3.3871328727963666080e0, 1.3314166789178437745e+2,
                                   1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                   4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                   3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static constexpr double b[] = {1.0,
                                   4.2313330701600911252e+1, 6.8718700749205790830e+2,
                                   5.3941960214247511077e+3, 2.1213794301586595867e+4,
                                   3.9307895800092710610e+4, 2.8729085735721942674e+4,
                                   5.2264952788528545610e+3};
    static constexpr double c[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                   5.76949722146069140550e0, 3.64784832476320460504e0,
                                   1.27045825245236838258e0, 2.41780725177450611770e-1,
                                   2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[] = {1.0,
                                   2.05319162663775882187e0, 1.67638483018380384940e0,
                                   6.89767334985100004550e-1, 1.48103976427480074590e-1,
                                   1.51986665636164571966e-2, 5.47593808499534494600e-4,
                                   1.05075007164441684324e-9};
    static constexpr double e[] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                                   1.78482653991729133580e0, 2.96560571828504891230e-1,
                                   2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                   2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[] = {1.0,
                                   5.99832206555887937690e-1, 1.36929880922735805310e-1,
                                   1.48753612908506148525e-2, 7.86869131145613259100e-4,
                                   1.84631831751005468180e-5, 1.42151175831644588870e-7,
                                   2.04426310338993978564e-15};
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * polynomial(a, r) / polynomial(b, r);
    }
    double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = polynomial(c, r) / polynomial(d, r);
    } else {
        r -= 5.0;
        v = polynomial(e, r) / polynomial(f, r);
    }
    return q < 0.0 ? -v : v;
}

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0,1)");
    if (p > 0.5) return -normal_quantile(1.0 - p);  // 1 - p is exact here
    const double x = ppnd16(p);
    // Newton step on the lower tail, where erfc is accurate.
    const double err = normal_cdf(x) - p;
    const double dens = kInvSqrt2Pi * std::exp(-0.5 * x * x);
    return dens > 0.0 ? x - err / dens : x;
}

double normal_upper_quantile(double tail) {
    if (!(tail > 0.0 && tail < 1.0))
        throw std::domain_error("normal_upper_quantile: tail must lie in (0,1)");
    return -normal_quantile(tail);
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw std::domain_error("incomplete_beta: a, b must be > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    // Lentz continued fraction; converges fast for x < (a+1)/(a+b+2).
    auto fraction = [](double aa, double bb, double xx) {
        constexpr double tiny = 1e-300;
        constexpr double eps = 1e-16;
        double c = 1.0, d = 1.0 - (aa + bb) * xx / (aa + 1.0);
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 10000; ++m) {
            const double md = m;
            double num = md * (bb - md) * xx / ((aa + 2 * md - 1) * (aa + 2 * md));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(aa + md) * (aa + bb + md) * xx / ((aa + 2 * md) * (aa + 2 * md + 1));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = d * c;
            h *= delta;
            if (std::abs(delta - 1.0) < eps) break;
        }
        return h;
    };
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * fraction(a, b, x) / a;
    return 1.0 - std::exp(log_front) * fraction(b, a, 1.0 - x) / b;
}

}  // namespace unseen
