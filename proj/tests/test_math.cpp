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

#include <cmath>
#include <random>

#include <doctest.h>

#include "capalloc/errors.hpp"
#include "capalloc/math/normal.hpp"
#include "capalloc/math/quadrature.hpp"
#include "capalloc/math/rng.hpp"

using namespace capalloc;
using math::norm_cdf;
using math::norm_pdf;
using math::norm_ppf;

TEST_SUITE_BEGIN("math");

TEST_CASE("normal cdf basics") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_cdf(1e10) == doctest::Approx(1.0).epsilon(1e-15));
    // Symmetry Phi(-x) = 1 - Phi(x) on the central range.
    for (double x = 0.0; x <= 5.0; x += 0.173)
        CHECK(norm_cdf(-x) + norm_cdf(x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normal quantile round trip") {
    // The tail example accuracy rests on cdf/ppf being mutually consistent.
    // Round trips run through the lower tail where p is fully resolved in
    // double precision (near p = 1 the input itself cannot hold the tail).
    for (double x = -8.0; x <= -0.0625; x += 0.0625) {
        const double p = norm_cdf(x);
        const double back = norm_ppf(p);
        CHECK(std::fabs(back - x) <= 1e-13 * (1.0 + std::fabs(x)));
    }
    // And in probability space across many magnitudes.
    for (double lp = -15.0; lp < -0.4; lp += 0.37) {
        const double p = std::pow(10.0, lp);
        const double x = norm_ppf(p);
        CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-12));
    }
    // Upper side via exactly representable complements.
    CHECK(norm_ppf(0.75) == -norm_ppf(0.25));
    CHECK(norm_ppf(0.9375) == -norm_ppf(0.0625));
    CHECK(norm_ppf(0.999) == doctest::Approx(-norm_ppf(0.001)).epsilon(1e-13));
    CHECK(norm_ppf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    CHECK(norm_ppf(0.5) == 0.0);
    CHECK_THROWS_AS(norm_ppf(0.0), ValidationError);
    CHECK_THROWS_AS(norm_ppf(1.0), ValidationError);
}

TEST_CASE("Gauss-Hermite integrates normal moments exactly") {
    const auto& gh = math::GaussHermite::n64();
    REQUIRE(gh.size() == 64);
    // E[1], E[Z^2], E[Z^4], E[Z^6] = 1, 1, 3, 15
    CHECK(gh.integrate_normal([](double) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gh.integrate_normal([](double z) { return z; }) ==
          doctest::Approx(0.0).epsilon(1e-13));
    CHECK(gh.integrate_normal([](double z) { return z * z; }) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gh.integrate_normal([](double z) { return z * z * z * z; }) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(gh.integrate_normal([](double z) { return std::pow(z, 6); }) ==
          doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("Gauss-Hermite reproduces E[Phi(a + b Z)] = Phi(a / sqrt(1 + b^2))") {
    const auto& gh = math::GaussHermite::n64();
    for (double a : {-2.32, -1.0, 0.0, 0.7, 1.96}) {
        for (double b : {0.25, 0.5, 1.0}) {
            const double got =
                gh.integrate_normal([&](double z) { return norm_cdf(a + b * z); });
            const double want = norm_cdf(a / std::sqrt(1.0 + b * b));
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("random streams are deterministic per (seed, stream)") {
    math::RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool same = true, diff1 = false, diff2 = false;
    for (int i = 0; i < 100; ++i) {
        const double va = a.normal();
        same = same && (va == b.normal());
        diff1 = diff1 || (va != c.normal());
        diff2 = diff2 || (va != d.normal());
    }
    CHECK(same);
    CHECK(diff1);
    CHECK(diff2);
}

TEST_CASE("normal draws match the normal distribution moments") {
    math::RandomStream s(2024, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0, sum3 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        sum += z;
        sum2 += z * z;
        sum3 += z * z * z;
    }
    const double se = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(sum / n) < 4 * se);
    CHECK(std::fabs(sum2 / n - 1.0) < 4 * std::sqrt(2.0) * se);
    CHECK(std::fabs(sum3 / n) < 4 * std::sqrt(15.0) * se);
}

TEST_SUITE_END();
