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

#pragma once

#include <cstddef>
#include <vector>

namespace capalloc::math {

//! Gauss-Hermite rule, already rotated into "expectation under a standard
//! normal" form: E[f(Z)] ~ sum_i weight[i] * f(node[i]).
class GaussHermite {
public:
    explicit GaussHermite(std::size_t n);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    template <class F>
    double integrate_normal(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            acc += weights_[i] * f(nodes_[i]);
        return acc;
    }

    //! Shared 64-node rule; enough for >= 10 digits on smooth bounded
    //! integrands against the normal density.
    static const GaussHermite& n64();

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

} // namespace capalloc::math
