#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "wva/errors.hpp"

namespace wva {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    std::size_t max_intervals = 8192;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair on [-1, 1] (QUADPACK dqk15 values).
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kGk15Weights = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
// Gauss weights aligned with the odd Kronrod nodes (indices 1,3,5,7,9,11,13).
inline constexpr std::array<double, 4> kG7Weights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct PanelResult {
    double value;
    double error;
};

template <class F>
PanelResult gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 15> fv{};
    fv[7] = f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGk15Nodes[i];
        fv[i] = f(mid - dx);
        fv[14 - i] = f(mid + dx);
    }

    double resk = kGk15Weights[7] * fv[7];
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        resk += kGk15Weights[i] * (fv[i] + fv[14 - i]);
        resabs += kGk15Weights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    double resg = kG7Weights[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        resg += kG7Weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    const double mean = resk * 0.5;
    double resasc = kGk15Weights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kGk15Weights[i] *
                  (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);
    return {value, err};
}

} // namespace detail

namespace detail {

/// Worst-interval-first adaptive refinement starting from a seed mesh.
template <class F>
double adapt(F&& f, const std::vector<double>& breakpoints,
             const QuadratureOptions& opt) {
    struct Interval {
        double a, b, value, error;
    };
    std::vector<Interval> heap;
    auto by_error = [](const Interval& x, const Interval& y) { return x.error < y.error; };

    double total = 0.0, errsum = 0.0;
    auto push = [&](double lo, double hi) {
        auto [v, e] = gk15(f, lo, hi);
        total += v;
        errsum += e;
        heap.push_back({lo, hi, v, e});
        std::push_heap(heap.begin(), heap.end(), by_error);
    };

    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
        push(breakpoints[k], breakpoints[k + 1]);

    while (errsum > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (heap.size() + 1 > opt.max_intervals)
            throw QuadratureError("integrate: interval budget exhausted");
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Interval worst = heap.back();
        heap.pop_back();
        total -= worst.value;
        errsum -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadratureError("integrate: interval collapsed below machine precision");
        push(worst.a, mid);
        push(mid, worst.b);
    }
    // Fresh sum: the incrementally tracked total carries update roundoff.
    double result = 0.0;
    for (const auto& iv : heap) result += iv.value;
    return result;
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of a smooth integrand over [a, b].
/// Bisects the worst interval until the summed error estimate meets
/// max(abs_tol, rel_tol * |integral|); throws QuadratureError when the
/// interval budget runs out first.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    if (a == b) return 0.0;
    return detail::adapt(f, {a, b}, opt);
}

/// Integrates over [a, b] with a mesh graded geometrically toward the
/// interior point c, so even a feature orders of magnitude narrower than
/// the interval is resolved by the first panels.
template <class F>
double integrate_split(F&& f, double a, double b, double c,
                       const QuadratureOptions& opt = {}) {
    if (a == b) return 0.0;
    if (c <= a || c >= b) return detail::adapt(f, {a, b}, opt);

    constexpr int kGradeLevels = 8;  // finest seed panel: span / 4^8
    std::vector<double> mesh;
    mesh.push_back(a);
    for (int k = 1; k <= kGradeLevels; ++k) {
        const double x = c - (c - a) * std::pow(4.0, -k);
        if (x > mesh.back()) mesh.push_back(x);
    }
    mesh.push_back(c);
    for (int k = kGradeLevels; k >= 1; --k) {
        const double x = c + (b - c) * std::pow(4.0, -k);
        if (x > mesh.back() && x < b) mesh.push_back(x);
    }
    mesh.push_back(b);
    return detail::adapt(f, mesh, opt);
}

} // namespace wva
