// Copyright 2026 The Chamon Decoder Authors
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

#ifndef CHAMON_THRESHOLD_H
#define CHAMON_THRESHOLD_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chamon/harness.h"

namespace chamon {

/// Weighted least-squares line P_fail = intercept + slope * p.
struct LinearFit {
    int d = 0;
    double intercept = 0;
    double slope = 0;
    double var_intercept = 0;
    double var_slope = 0;
    double cov = 0;
    size_t num_points = 0;
};

/// Fits the points of distance `d` with p inside [lo, hi]. Each point is
/// weighted by 1 / sigma^2 with sigma from a continuity-corrected binomial.
std::optional<LinearFit> fit_line(const CampaignStats &stats, int d, double lo, double hi);

struct Crossing {
    int d_small;
    int d_large;
    double p;
    double sigma;
};

struct ThresholdEstimate {
    bool found = false;
    double p_star = 0;
    double uncertainty = 0;
    double window_lo = 0;
    double window_hi = 0;
    std::vector<LinearFit> fits;
    std::vector<Crossing> crossings;
    /// Human-readable reason when nothing was found, e.g. "no crossing in window".
    std::string message;
};

/// Grid point where P_fail(d_large) - P_fail(d_small) changes sign from negative
/// to positive, linearly interpolated. nullopt if it never does.
std::optional<double> coarse_crossing(const CampaignStats &stats, int d_small, int d_large);

/// Per-distance linear fits in the window, pairwise crossings averaged.
///
/// `distances` defaults to every d present (at least two needed). The window
/// defaults to +-20% around the coarse crossing of the two largest distances.
ThresholdEstimate estimate_threshold(const CampaignStats &stats, std::vector<int> distances = {},
                                     std::optional<std::pair<double, double>> window = std::nullopt);

}  // namespace chamon

#endif
