#include "shelldecay/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "shelldecay/errors.hpp"

namespace shelldecay::diag {

namespace {

double ls_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw DomainError("slope fit needs at least two matching samples");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n, my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (!(sxx > 0.0)) throw DomainError("slope fit needs distinct abscissae");
    return sxy / sxx;
}

std::vector<double> logs(std::span<const double> v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw DomainError("logarithmic fit needs positive samples");
        out[i] = std::log(v[i]);
    }
    return out;
}

}  // namespace

double log_slope(std::span<const double> x, std::span<const double> y) { return ls_slope(x, logs(y)); }

double loglog_slope(std::span<const double> x, std::span<const double> y) { return ls_slope(logs(x), logs(y)); }

std::vector<std::size_t> local_maxima(std::span<const double> y) {
    std::vector<std::size_t> out;
    std::size_t i = 1;
    while (i + 1 < y.size()) {
        if (y[i] > y[i - 1]) {
            std::size_t j = i;
            while (j + 1 < y.size() && y[j + 1] == y[i]) ++j;
            if (j + 1 < y.size() && y[j + 1] < y[i]) out.push_back(i);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

int count_local_maxima(std::span<const double> y) { return static_cast<int>(local_maxima(y).size()); }

double dominant_frequency_detrended(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    if (n < 4 || y.size() != n) throw DomainError("spectrum needs at least four samples");
    const auto ly = logs(y);
    const double c1 = ls_slope(t, ly);
    double c0 = 0;
    for (std::size_t i = 0; i < n; ++i) c0 += ly[i] - c1 * t[i];
    c0 /= n;
    std::vector<double> z(n);
    double mean = 0;
    for (std::size_t i = 0; i < n; ++i) mean += (z[i] = y[i] / std::exp(c0 + c1 * t[i]));
    mean /= n;
    for (double& v : z) v -= mean;
    const double dt = (t[n - 1] - t[0]) / (n - 1);
    std::size_t best = 1;
    double best_power = -1.0;
    for (std::size_t m = 1; m <= n / 2; ++m) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += z[i] * std::exp(cplx(0.0, -2.0 * kPi * double(m * i % n) / n));
        if (std::norm(acc) > best_power) best_power = std::norm(acc), best = m;
    }
    return best / (n * dt);
}

double envelope_ratio(std::span<const double> t, std::span<const cplx> total, std::span<const cplx> tail,
                      double half_width) {
    const std::size_t n = t.size();
    if (total.size() != n || tail.size() != n || n == 0) throw DomainError("envelope ratio needs matching samples");
    double worst = 0.0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (t[i] - t[lo] > half_width) ++lo;
        while (hi + 1 < n && t[hi + 1] - t[i] <= half_width) ++hi;
        double env = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) env = std::max(env, std::abs(total[j]));
        worst = std::max(worst, std::abs(tail[i]) / env);
    }
    return worst;
}

double pointwise_ratio(std::span<const cplx> total, std::span<const cplx> tail) {
    if (total.size() != tail.size()) throw DomainError("ratio needs matching samples");
    double worst = 0.0;
    for (std::size_t i = 0; i < total.size(); ++i) worst = std::max(worst, std::abs(tail[i]) / std::abs(total[i]));
    return worst;
}

}  // namespace shelldecay::diag
