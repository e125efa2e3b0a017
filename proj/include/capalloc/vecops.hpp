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

/*! \file capalloc/vecops.hpp
    \brief Array operations built on the simd kernels and the worker pool.

    Reductions are always computed per fixed 16384-element block and combined
    in block order, whether one thread runs or eight; results are therefore
    independent of the worker count.
*/

#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace capalloc::vecops {

inline constexpr std::size_t kBlock = 16384;

double sum(std::span<const double> x);
double mean(std::span<const double> x);
//! Population variance (divide by N).
double variance(std::span<const double> x);
//! Population covariance (divide by N).
double covariance(std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);
double max(std::span<const double> x);
//! sum_i min(x[i], cap)
double sum_min(std::span<const double> x, double cap);
//! sum_i Phi((y - x[i]) / bw)
double sum_norm_cdf(std::span<const double> x, double y, double bw);
//! sum_i phi((x0 - x[i]) / bw), phi the unnormalized Gaussian kernel exp(-z^2/2)
double sum_gauss(std::span<const double> x, double x0, double bw);

//! Sum and count of entries <= threshold.
std::pair<double, std::size_t> sum_count_le(std::span<const double> x, double threshold);
//! Sum and count of entries >= threshold.
std::pair<double, std::size_t> sum_count_ge(std::span<const double> x, double threshold);
//! Sum of y[i] over scenarios with x[i] <= threshold.
double sum_where_le(std::span<const double> x, double threshold, std::span<const double> y);
//! Sum of y[i] over scenarios with x[i] >= threshold.  Uses the same block
//! layout as sum_count_ge, so ratios of the two are exact when y == x.
double sum_where_ge(std::span<const double> x, double threshold, std::span<const double> y);

// out[i] = a*x[i] + b*y[i]
void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out);
// acc[i] += a*x[i]
void add_scaled(double a, std::span<const double> x, std::span<double> acc);
// out[i] = min(x[i], hi) - min(x[i], lo)
void layer(std::span<const double> x, double lo, double hi, std::span<double> out);
// out[i] = -((x[i]-center)/bw)^2 / 2
void gauss_log_weight(std::span<const double> x, double center, double bw,
                      std::span<double> out);
// out[i] = exp(x[i] + shift)
void exp_shifted(std::span<const double> x, double shift, std::span<double> out);

} // namespace capalloc::vecops
