#ifndef UNSEEN_OPTIMIZE_HPP
#define UNSEEN_OPTIMIZE_HPP

#include <cmath>
#include <utility>
#include <vector>

namespace unseen {

template <typename Scalar>
struct Extremum {
    Scalar x;
    Scalar value;
};

/// Golden-section search for a maximum of `f` on [lo, hi].
///
/// Assumes `f` is unimodal on the bracket. Stops when the bracket is
/// narrower than `tol`; the best point seen (including both endpoints) is
/// returned, so a monotone function reports its maximizing endpoint.
template <typename Scalar, typename F>
Extremum<Scalar> golden_section_max(F&& f, Scalar lo, Scalar hi, Scalar tol) {
    const Scalar inv_phi = Scalar(0.6180339887498948482);
    Extremum<Scalar> best{lo, f(lo)};
    if (!(hi > lo)) return best;
    {
        const Scalar fh = f(hi);
        if (fh > best.value) best = {hi, fh};
    }
    Scalar a = lo, b = hi;
    Scalar c = b - inv_phi * (b - a);
    Scalar d = a + inv_phi * (b - a);
    Scalar fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if (fc > best.value) best = {c, fc};
    if (fd > best.value) best = {d, fd};
    return best;
}

template <typename Scalar, typename F>
Extremum<Scalar> golden_section_min(F&& f, Scalar lo, Scalar hi, Scalar tol) {
    auto r = golden_section_max([&](Scalar x) { return -f(x); }, lo, hi, tol);
    return {r.x, -r.value};
}

/// Coarse uniform scan of `points` nodes followed by golden refinement
/// inside the bracket around the best node.
template <typename Scalar, typename F>
Extremum<Scalar> scan_then_golden_max(F&& f, Scalar lo, Scalar hi, int points,
                                      Scalar tol) {
    if (!(hi > lo)) return {lo, f(lo)};
    std::vector<Scalar> xs(points), fs(points);
    int arg = 0;
    for (int i = 0; i < points; ++i) {
        xs[i] = lo + (hi - lo) * Scalar(i) / Scalar(points - 1);
        fs[i] = f(xs[i]);
        if (fs[i] > fs[arg]) arg = i;
    }
    const Scalar a = xs[arg > 0 ? arg - 1 : 0];
    const Scalar b = xs[arg + 1 < points ? arg + 1 : points - 1];
    auto r = golden_section_max(f, a, b, tol);
    if (fs[arg] > r.value) return {xs[arg], fs[arg]};
    return r;
}

/// `points` log-spaced nodes on [lo, hi], lo > 0.
template <typename Scalar>
std::vector<Scalar> log_spaced(Scalar lo, Scalar hi, int points) {
    std::vector<Scalar> xs(points);
    const Scalar llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        xs[i] = std::exp(llo + (lhi - llo) * Scalar(i) / Scalar(points - 1));
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

}  // namespace unseen

#endif  // UNSEEN_OPTIMIZE_HPP
