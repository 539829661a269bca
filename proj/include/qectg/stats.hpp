// Copyright 2026 The qectg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECTG_STATS_HPP
#define QECTG_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

namespace qectg {

/// Two-sided standard normal quantile for 99.9% coverage.
constexpr double kZ999 = 3.2905;

struct Interval {
    double low;
    double high;
};

/// Wilson score interval for `failures` successes out of `trials`.
inline Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = kZ999) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, std::min(center - half, phat)), std::min(1.0, std::max(center + half, phat))};
}

inline bool intervals_overlap(Interval a, Interval b) { return a.low <= b.high && b.low <= a.high; }

}  // namespace qectg

#endif  // QECTG_STATS_HPP
