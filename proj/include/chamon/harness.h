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

#ifndef CHAMON_HARNESS_H
#define CHAMON_HARNESS_H

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chamon/decode.h"
#include "chamon/pauli.h"

namespace chamon {

struct CampaignConfig {
    DecoderKind decoder = DecoderKind::basic;
    std::vector<int> d_list;
    std::vector<double> p_list;
    uint64_t trials = 1;
    uint64_t seed = 0;
    unsigned workers = 1;
    /// Where logical bases are cached; empty disables caching.
    std::filesystem::path cache_dir;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

struct TrialRecord {
    int d = 0;
    double p = 0;
    uint64_t trial = 0;
    DecodeStatus status = DecodeStatus::corrected;
    bool failure = false;
    int64_t decode_ns = 0;
    int64_t bp_ns = 0;
    int64_t matching_ns = 0;
    int64_t sweep_ns = 0;
};

/// sqrt((P - P^2) / N).
double failure_stderr(double p_fail, uint64_t trials);

struct PointStats {
    int d = 0;
    double p = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double wall_seconds = 0;

    double p_fail() const {
        return trials ? double(failures) / double(trials) : 0.0;
    }
    double stderr_fail() const {
        return failure_stderr(p_fail(), trials);
    }
    bool operator==(const PointStats &) const = default;
};

struct CampaignStats {
    DecoderKind decoder = DecoderKind::basic;
    uint64_t seed = 0;
    /// Ordered by d, then p, in the order the campaign listed them.
    std::vector<PointStats> points;

    const PointStats *find(int d, double p) const;
};

/// Everything one lattice size needs to run trials.
struct TrialContext {
    ChamonLattice lattice;
    ChamonDecoder decoder;
    LogicalBasis logicals;

    TrialContext(int d, const std::filesystem::path &cache_dir);
};

/// Key of the error stream for one (d, p) point.
uint64_t point_seed(uint64_t base_seed, int d, double p);

/// Samples trial `trial` of point (d, p), decodes it and classifies the outcome.
TrialRecord run_trial(const TrialContext &ctx, DecoderKind decoder, double p, uint64_t base_seed, uint64_t trial);

using ProgressCallback = std::function<void(const PointStats &)>;

/// Runs every (d, p) point. Results depend only on the config, not on `workers`.
/// When `records` is non-null it receives every trial in (d, p, trial) order.
CampaignStats run_campaign(
    const CampaignConfig &config, const ProgressCallback &progress = {}, std::vector<TrialRecord> *records = nullptr);

struct EmitOptions {
    /// Include the wall_time_s column. Off gives byte-reproducible output.
    bool timing = true;
};

void write_csv(const CampaignStats &stats, std::ostream &out, const EmitOptions &options = {});
void write_json(const CampaignStats &stats, std::ostream &out, const EmitOptions &options = {});
/// Gnuplot-style blocks per d: "p p_fail stderr", blank line between blocks.
void write_plot_data(const CampaignStats &stats, std::ostream &out);
/// Throws std::runtime_error on malformed input.
CampaignStats read_csv(std::istream &in);

/// Writes `<stem>.csv` or `<stem>.json` (and `<stem>.plot.dat`). Throws std::runtime_error on I/O failure.
void emit_results(const CampaignStats &stats, const std::filesystem::path &path, const std::string &format,
                  const EmitOptions &options = {});

}  // namespace chamon

#endif
