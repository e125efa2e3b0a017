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

/*! \file capalloc/kernel.hpp
    \brief Kernel density and kernel regression machinery.

    The Gaussian kernel is the only admitted choice: the smoothed-quantile
    root find needs the kernel's closed-form CDF.  Kernel weights are computed
    with a max-exponent shift so deep-tail queries never underflow to an
    all-zero weight vector.
*/

#pragma once

#include <optional>
#include <span>
#include <vector>

namespace capalloc {

struct KernelConfig {
    enum class Kind { Gaussian };

    Kind kernel = Kind::Gaussian;
    //! Explicit bandwidth; when absent, Silverman's rule on the sample.
    std::optional<double> bandwidth;

    static KernelConfig silverman() { return {}; }
    static KernelConfig fixed(double b);

    double resolve_bandwidth(std::span<const double> sample) const;
};

//! Silverman's rule of thumb: 0.9 * min(sigma, IQR/1.34) * N^(-1/5), with the
//! population standard deviation and the module's lower-quantile IQR.
double silverman_bandwidth(std::span<const double> sample);

//! Rosenblatt-Parzen density estimate at x.
double rp_density(std::span<const double> sample, const KernelConfig& cfg, double x);

//! Root y of (1/N) sum_k Phi((y - x_k)/b) = gamma, by bracketed bisection to
//! absolute tolerance 1e-10 * (1 + |y|).
double smoothed_quantile(std::span<const double> sample, const KernelConfig& cfg,
                         double gamma);

//! Nadaraya-Watson estimate of E[Y | X = x0].
double nadaraya_watson(std::span<const double> x_sample, std::span<const double> y_sample,
                       const KernelConfig& cfg, double x0);

//! Sorted copy plus bandwidth, for repeated smoothed-CDF work on one sample.
//! CDF terms with |z| >= 8 are taken as exactly 0/1 (true value within 7e-16),
//! which keeps each evaluation at O(window) instead of O(N).
class SmoothedSample {
public:
    SmoothedSample(std::span<const double> sample, const KernelConfig& cfg);

    double bandwidth() const { return bw_; }
    std::span<const double> sorted() const { return sorted_; }

    double cdf(double y) const;
    double quantile(double gamma) const;

private:
    std::vector<double> sorted_;
    double bw_;
};

//! Kernel weights at one query point, reusable across response columns; the
//! response estimates then share one weight normalization.
class NwWeights {
public:
    NwWeights() = default;

    void compute(std::span<const double> x_sample, double bandwidth, double x0);

    //! NW estimate sum_k w_k y_k / sum_k w_k.
    double apply(std::span<const double> y_sample) const;

    double total_weight() const { return total_; }
    std::span<const double> weights() const { return w_; }

private:
    std::vector<double> log_w_;
    std::vector<double> w_;
    double total_ = 0.0;
};

} // namespace capalloc
