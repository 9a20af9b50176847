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

#include "chamon/threshold.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace chamon {

std::optional<LinearFit> fit_line(const CampaignStats &stats, int d, double lo, double hi) {
    double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t count = 0;
    for (const auto &pt : stats.points) {
        if (pt.d != d || pt.p < lo - 1e-12 || pt.p > hi + 1e-12 || pt.trials == 0) {
            continue;
        }
        double n = double(pt.trials);
        double smoothed = (double(pt.failures) + 0.5) / (n + 1.0);
        double var = smoothed * (1.0 - smoothed) / n;
        double w = 1.0 / var;
        s += w;
        sx += w * pt.p;
        sy += w * pt.p_fail();
        sxx += w * pt.p * pt.p;
        sxy += w * pt.p * pt.p_fail();
        count++;
    }
    if (count < 2) {
        return std::nullopt;
    }
    double det = s * sxx - sx * sx;
    if (det <= 0) {
        return std::nullopt;
    }
    LinearFit fit;
    fit.d = d;
    fit.num_points = count;
    fit.slope = (s * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    fit.var_intercept = sxx / det;
    fit.var_slope = s / det;
    fit.cov = -sx / det;
    return fit;
}

std::optional<double> coarse_crossing(const CampaignStats &stats, int d_small, int d_large) {
    std::vector<std::pair<double, double>> diff;
    for (const auto &pt : stats.points) {
        if (pt.d != d_large) {
            continue;
        }
        if (const PointStats *other = stats.find(d_small, pt.p)) {
            diff.emplace_back(pt.p, pt.p_fail() - other->p_fail());
        }
    }
    std::sort(diff.begin(), diff.end());
    for (size_t i = 0; i + 1 < diff.size(); i++) {
        auto [p0, y0] = diff[i];
        auto [p1, y1] = diff[i + 1];
        if (y0 < 0 && y1 >= 0) {
            return p0 + (p1 - p0) * (-y0) / (y1 - y0);
        }
    }
    return std::nullopt;
}

ThresholdEstimate estimate_threshold(const CampaignStats &stats, std::vector<int> distances,
                                     std::optional<std::pair<double, double>> window) {
    ThresholdEstimate est;
    if (distances.empty()) {
        std::set<int> ds;
        for (const auto &pt : stats.points) {
            ds.insert(pt.d);
        }
        distances.assign(ds.begin(), ds.end());
    }
    std::sort(distances.begin(), distances.end());
    if (distances.size() < 2) {
        est.message = "need at least two distances";
        return est;
    }
    if (window) {
        est.window_lo = window->first;
        est.window_hi = window->second;
    } else {
        auto coarse = coarse_crossing(stats, distances[distances.size() - 2], distances.back());
        if (!coarse) {
            est.message = "no crossing in window";
            return est;
        }
        est.window_lo = 0.8 * *coarse;
        est.window_hi = 1.2 * *coarse;
    }
    for (int d : distances) {
        auto fit = fit_line(stats, d, est.window_lo, est.window_hi);
        if (!fit || fit->num_points < 3) {
            est.message = "fewer than 3 points in window for d=" + std::to_string(d);
            return est;
        }
        est.fits.push_back(*fit);
    }

    double sum = 0;
    double var_sum = 0;
    for (size_t i = 0; i < est.fits.size(); i++) {
        for (size_t j = i + 1; j < est.fits.size(); j++) {
            const LinearFit &a = est.fits[i];
            const LinearFit &b = est.fits[j];
            double dslope = a.slope - b.slope;
            if (dslope == 0) {
                continue;
            }
            double p = (b.intercept - a.intercept) / dslope;
            if (p < est.window_lo || p > est.window_hi) {
                continue;
            }
            // Gradient of p = (b0 - a0) / (a1 - b1) with respect to (a0, a1) and (b0, b1).
            double ga0 = -1.0 / dslope, ga1 = -p / dslope;
            double gb0 = 1.0 / dslope, gb1 = p / dslope;
            double var = ga0 * ga0 * a.var_intercept + ga1 * ga1 * a.var_slope + 2 * ga0 * ga1 * a.cov +
                         gb0 * gb0 * b.var_intercept + gb1 * gb1 * b.var_slope + 2 * gb0 * gb1 * b.cov;
            est.crossings.push_back({a.d, b.d, p, std::sqrt(std::max(var, 0.0))});
            sum += p;
            var_sum += var;
        }
    }
    if (est.crossings.empty()) {
        est.message = "no crossing in window";
        return est;
    }
    double k = double(est.crossings.size());
    est.found = true;
    est.p_star = sum / k;
    double spread = 0;
    for (const auto &c : est.crossings) {
        spread += (c.p - est.p_star) * (c.p - est.p_star);
    }
    spread = k > 1 ? std::sqrt(spread / (k - 1)) : 0.0;
    est.uncertainty = std::max(std::sqrt(var_sum) / k, spread);
    return est;
}

}  // namespace chamon
