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

/*! \file capalloc/math/normal.hpp
    \brief Standard normal density, distribution function and quantile function.

    norm_cdf and norm_ppf are accurate to better than 1e-13 relative error on
    [-8, 8]; the whole factor-model example rests on that, so both are covered
    by round-trip tests.
*/

#pragma once

#include <cmath>

namespace capalloc::math {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
inline constexpr double kSqrt2 = 1.4142135623730950488016887;

//! Standard normal density.
inline double norm_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

//! Standard normal distribution function, Phi(x) = 0.5 erfc(-x / sqrt 2).
double norm_cdf(double x);

//! Standard normal quantile function (Wichura's AS 241, double precision).
//! Domain (0, 1); throws capalloc::ValidationError outside.
double norm_ppf(double p);

} // namespace capalloc::math
