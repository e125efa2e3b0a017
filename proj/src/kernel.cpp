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

#include "capalloc/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "capalloc/errors.hpp"
#include "capalloc/math/normal.hpp"
#include "capalloc/risk_measures.hpp"
#include "capalloc/vecops.hpp"

namespace capalloc {

namespace {
// Matches the 0/1 cutoff of the kernel CDF core.
constexpr double kCdfCut = 8.0;
} // namespace

KernelConfig KernelConfig::fixed(double b) {
    if (!(b > 0.0) || !std::isfinite(b))
        throw ValidationError("KernelConfig: bandwidth must be positive");
    KernelConfig cfg;
    cfg.bandwidth = b;
    return cfg;
}

double KernelConfig::resolve_bandwidth(std::span<const double> sample) const {
    if (bandwidth)
        return *bandwidth;
    return silverman_bandwidth(sample);
}

double silverman_bandwidth(std::span<const double> sample) {
    if (sample.size() < 2)
        throw ValidationError("silverman_bandwidth: need at least two observations");
    const double sigma = std::sqrt(vecops::variance(sample));
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double spread = std::min(sigma, iqr / 1.34);
    if (!(spread > 0.0))
        throw DegeneracyError("silverman_bandwidth: zero-spread sample");
    return 0.9 * spread * std::pow(static_cast<double>(sample.size()), -0.2);
}

double rp_density(std::span<const double> sample, const KernelConfig& cfg, double x) {
    if (sample.empty())
        throw ValidationError("rp_density: empty sample");
    const double b = cfg.resolve_bandwidth(sample);
    const double s = vecops::sum_gauss(sample, x, b);
    return s * math::kInvSqrt2Pi / (b * static_cast<double>(sample.size()));
}

SmoothedSample::SmoothedSample(std::span<const double> sample, const KernelConfig& cfg)
    : sorted_(sample.begin(), sample.end()) {
    if (sorted_.empty())
        throw ValidationError("SmoothedSample: empty sample");
    bw_ = cfg.resolve_bandwidth(sample);
    std::sort(sorted_.begin(), sorted_.end());
}

double SmoothedSample::cdf(double y) const {
    const double n = static_cast<double>(sorted_.size());
    // x <= y - 8b contributes 1, x >= y + 8b contributes 0.
    const auto begin = sorted_.begin();
    const auto lo = std::upper_bound(begin, sorted_.end(), y - kCdfCut * bw_);
    const auto hi = std::lower_bound(lo, sorted_.end(), y + kCdfCut * bw_);
    const double ones = static_cast<double>(lo - begin);
    const std::span<const double> window(sorted_.data() + (lo - begin),
                                         static_cast<std::size_t>(hi - lo));
    return (ones + vecops::sum_norm_cdf(window, y, bw_)) / n;
}

double SmoothedSample::quantile(double gamma) const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ValidationError("SmoothedSample::quantile: gamma must lie in (0, 1)");
    double lo = sorted_.front() - (kCdfCut + 1.0) * bw_;
    double hi = sorted_.back() + (kCdfCut + 1.0) * bw_;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double tol = 1e-10 * (1.0 + std::fabs(mid));
        if (hi - lo <= 2.0 * tol)
            return mid;
        if (cdf(mid) < gamma)
            lo = mid;
        else
            hi = mid;
    }
    throw DegeneracyError("SmoothedSample::quantile: bisection failed to converge");
}

double smoothed_quantile(std::span<const double> sample, const KernelConfig& cfg,
                         double gamma) {
    return SmoothedSample(sample, cfg).quantile(gamma);
}

void NwWeights::compute(std::span<const double> x_sample, double bandwidth, double x0) {
    if (x_sample.empty())
        throw ValidationError("NwWeights: empty sample");
    if (!(bandwidth > 0.0))
        throw ValidationError("NwWeights: bandwidth must be positive");
    log_w_.resize(x_sample.size());
    w_.resize(x_sample.size());
    vecops::gauss_log_weight(x_sample, x0, bandwidth, log_w_);
    const double shift = vecops::max(log_w_);
    if (!std::isfinite(shift))
        throw DegeneracyError("NwWeights: query point too far from sample");
    // exp(log w - max): the largest weight becomes exactly 1.
    vecops::exp_shifted(log_w_, -shift, w_);
    total_ = vecops::sum(w_);
}

double NwWeights::apply(std::span<const double> y_sample) const {
    if (y_sample.size() != w_.size())
        throw ValidationError("NwWeights::apply: size mismatch");
    return vecops::dot(w_, y_sample) / total_;
}

double nadaraya_watson(std::span<const double> x_sample, std::span<const double> y_sample,
                       const KernelConfig& cfg, double x0) {
    if (x_sample.size() != y_sample.size())
        throw ValidationError("nadaraya_watson: sample length mismatch");
    NwWeights w;
    w.compute(x_sample, cfg.resolve_bandwidth(x_sample), x0);
    return w.apply(y_sample);
}

} // namespace capalloc
