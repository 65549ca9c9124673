#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "shelldecay/model.hpp"

namespace shelldecay::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-11;
    double fail_above = 1e-9;  // estimated absolute error that counts as non-convergence
    int max_intervals = 4000;
};

struct Result {
    cplx value{};
    double error = 0.0;
    int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [lo, hi] for complex integrands.
///
/// The interval with the largest error estimate is bisected first; ties are broken
/// by position so the subdivision sequence is deterministic. Stops when the summed
/// estimate drops below max(abs_tol, rel_tol * |I|) or the interval budget is spent.
/// The caller decides whether `error` is acceptable.
template <class F>
Result adaptive(F&& f, double lo, double hi, const Options& opt = {}) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    struct Panel {
        double lo, hi;
        cplx value;
        double error;
        bool operator<(const Panel& o) const {
            return error != o.error ? error < o.error : lo > o.lo;
        }
    };
    auto eval = [&](double a, double b) {
        double err = 0.0;
        cplx v = GK::integrate(f, a, b, 0, 0.0, &err);
        return Panel{a, b, v, err};
    };

    std::priority_queue<Panel> heap;
    heap.push(eval(lo, hi));
    cplx total = heap.top().value;
    double total_err = heap.top().error;
    int n = 1;
    while (n < opt.max_intervals) {
        if (total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) break;
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            heap.push(worst);
            break;
        }
        Panel left = eval(worst.lo, mid);
        Panel right = eval(mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    // Re-sum from the panels to shed the drift of the running updates.
    total = {};
    total_err = 0.0;
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    for (const auto& p : panels) {
        total += p.value;
        total_err += p.error;
    }
    return {total, total_err, n};
}

/// Fixed-order Gauss-Legendre on [lo, hi].
template <int Points, class F>
auto gauss_legendre(F&& f, double lo, double hi) {
    return boost::math::quadrature::gauss<double, Points>::integrate(f, lo, hi);
}

}  // namespace shelldecay::quad
