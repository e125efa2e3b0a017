/* Copyright 2026 The Capalloc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "capalloc/vecops.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "capalloc/errors.hpp"
#include "capalloc/parallel.hpp"
#include "capalloc/simd/kernels.hpp"

namespace capalloc::vecops {

namespace {

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

// Per-block partials combined in block order; worker-count independent.
template <class F>
double blocked_sum(std::size_t n, F&& partial) {
    if (n == 0)
        return 0.0;
    const std::size_t nb = block_count(n);
    if (nb == 1)
        return partial(std::size_t{0}, n);
    std::vector<double> parts(nb);
    ThreadPool::instance().for_each(nb, [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        parts[b] = partial(lo, std::min(n, lo + kBlock));
    });
    double s = 0.0;
    for (double p : parts)
        s += p;
    return s;
}

template <class F>
void blocked_apply(std::size_t n, F&& fn) {
    if (n == 0)
        return;
    const std::size_t nb = block_count(n);
    if (nb == 1) {
        fn(std::size_t{0}, n);
        return;
    }
    ThreadPool::instance().for_each(nb, [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        fn(lo, std::min(n, lo + kBlock));
    });
}

void check_same_size(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ValidationError("vecops: size mismatch");
}

} // namespace

double sum(std::span<const double> x) {
    const auto& k = simd::active();
    return blocked_sum(x.size(),
                       [&](std::size_t lo, std::size_t hi) { return k.sum(x.data() + lo, hi - lo); });
}

double mean(std::span<const double> x) {
    if (x.empty())
        throw ValidationError("vecops::mean: empty sample");
    return sum(x) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    const double m = mean(x);
    const auto& k = simd::active();
    const double ss = blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        return k.sum_sq_dev(x.data() + lo, m, hi - lo);
    });
    return ss / static_cast<double>(x.size());
}

double covariance(std::span<const double> x, std::span<const double> y) {
    check_same_size(x, y);
    if (x.empty())
        throw ValidationError("vecops::covariance: empty sample");
    const double mx = mean(x);
    const double my = mean(y);
    const auto& k = simd::active();
    const double s = blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        return k.dot_centered(x.data() + lo, mx, y.data() + lo, my, hi - lo);
    });
    return s / static_cast<double>(x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
    check_same_size(x, y);
    const auto& k = simd::active();
    return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        return k.dot(x.data() + lo, y.data() + lo, hi - lo);
    });
}

double max(std::span<const double> x) {
    if (x.empty())
        return -std::numeric_limits<double>::infinity();
    const auto& k = simd::active();
    const std::size_t nb = block_count(x.size());
    if (nb == 1)
        return k.max(x.data(), x.size());
    std::vector<double> parts(nb);
    ThreadPool::instance().for_each(nb, [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        parts[b] = k.max(x.data() + lo, std::min(x.size(), lo + kBlock) - lo);
    });
    double m = parts[0];
    for (double p : parts)
        m = m > p ? m : p;
    return m;
}

double sum_min(std::span<const double> x, double cap) {
    const auto& k = simd::active();
    return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        return k.sum_min(x.data() + lo, cap, hi - lo);
    });
}

double sum_norm_cdf(std::span<const double> x, double y, double bw) {
    const auto& k = simd::active();
    const double inv_bw = 1.0 / bw;
    return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        return k.sum_norm_cdf(x.data() + lo, y, inv_bw, hi - lo);
    });
}

double sum_gauss(std::span<const double> x, double x0, double bw) {
    const auto& k = simd::active();
    const double inv_bw = 1.0 / bw;
    return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        return k.sum_gauss(x.data() + lo, x0, inv_bw, hi - lo);
    });
}

std::pair<double, std::size_t> sum_count_le(std::span<const double> x, double threshold) {
    const std::size_t n = x.size();
    const std::size_t nb = block_count(n);
    std::vector<double> sums(nb, 0.0);
    std::vector<std::size_t> counts(nb, 0);
    blocked_apply(n, [&](std::size_t lo, std::size_t hi) {
        const std::size_t b = lo / kBlock;
        double s = 0.0;
        std::size_t c = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (x[i] <= threshold) {
                s += x[i];
                ++c;
            }
        }
        sums[b] = s;
        counts[b] = c;
    });
    double s = 0.0;
    std::size_t c = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        s += sums[b];
        c += counts[b];
    }
    return {s, c};
}

std::pair<double, std::size_t> sum_count_ge(std::span<const double> x, double threshold) {
    const std::size_t n = x.size();
    const std::size_t nb = block_count(n);
    std::vector<double> sums(nb, 0.0);
    std::vector<std::size_t> counts(nb, 0);
    blocked_apply(n, [&](std::size_t lo, std::size_t hi) {
        const std::size_t b = lo / kBlock;
        double s = 0.0;
        std::size_t c = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (x[i] >= threshold) {
                s += x[i];
                ++c;
            }
        }
        sums[b] = s;
        counts[b] = c;
    });
    double s = 0.0;
    std::size_t c = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        s += sums[b];
        c += counts[b];
    }
    return {s, c};
}

double sum_where_le(std::span<const double> x, double threshold,
                    std::span<const double> y) {
    check_same_size(x, y);
    return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            if (x[i] <= threshold)
                s += y[i];
        return s;
    });
}

double sum_where_ge(std::span<const double> x, double threshold,
                    std::span<const double> y) {
    check_same_size(x, y);
    return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            if (x[i] >= threshold)
                s += y[i];
        return s;
    });
}

void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out) {
    check_same_size(x, y);
    if (out.size() != x.size())
        throw ValidationError("vecops::axpby: output size mismatch");
    const auto& k = simd::active();
    blocked_apply(x.size(), [&](std::size_t lo, std::size_t hi) {
        k.axpby(a, x.data() + lo, b, y.data() + lo, out.data() + lo, hi - lo);
    });
}

void add_scaled(double a, std::span<const double> x, std::span<double> acc) {
    if (acc.size() != x.size())
        throw ValidationError("vecops::add_scaled: size mismatch");
    const auto& k = simd::active();
    blocked_apply(x.size(), [&](std::size_t lo, std::size_t hi) {
        k.add_scaled(a, x.data() + lo, acc.data() + lo, hi - lo);
    });
}

void layer(std::span<const double> x, double lo_level, double hi_level,
           std::span<double> out) {
    if (out.size() != x.size())
        throw ValidationError("vecops::layer: size mismatch");
    const auto& k = simd::active();
    blocked_apply(x.size(), [&](std::size_t lo, std::size_t hi) {
        k.layer(x.data() + lo, lo_level, hi_level, out.data() + lo, hi - lo);
    });
}

void gauss_log_weight(std::span<const double> x, double center, double bw,
                      std::span<double> out) {
    if (out.size() != x.size())
        throw ValidationError("vecops::gauss_log_weight: size mismatch");
    const auto& k = simd::active();
    const double inv_bw = 1.0 / bw;
    blocked_apply(x.size(), [&](std::size_t lo, std::size_t hi) {
        k.gauss_log_weight(x.data() + lo, center, inv_bw, out.data() + lo, hi - lo);
    });
}

void exp_shifted(std::span<const double> x, double shift, std::span<double> out) {
    if (out.size() != x.size())
        throw ValidationError("vecops::exp_shifted: size mismatch");
    const auto& k = simd::active();
    blocked_apply(x.size(), [&](std::size_t lo, std::size_t hi) {
        k.exp_shifted(x.data() + lo, shift, out.data() + lo, hi - lo);
    });
}

} // namespace capalloc::vecops
