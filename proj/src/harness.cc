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

#include "chamon/harness.h"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace chamon {

void CampaignConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (d_list.empty() || p_list.empty()) {
        throw std::invalid_argument("need at least one d and one p");
    }
    for (int d : d_list) {
        if (d < 4 || d % 2 != 0) {
            throw std::invalid_argument("every d must be even and >= 4, got " + std::to_string(d));
        }
    }
    for (double p : p_list) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("every p must lie in [0, 1], got " + std::to_string(p));
        }
    }
    if (workers < 1) {
        throw std::invalid_argument("workers must be at least 1");
    }
}

double failure_stderr(double p_fail, uint64_t trials) {
    if (trials == 0) {
        return 0.0;
    }
    return std::sqrt((p_fail - p_fail * p_fail) / double(trials));
}

const PointStats *CampaignStats::find(int d, double p) const {
    for (const auto &pt : points) {
        if (pt.d == d && std::abs(pt.p - p) < 1e-12) {
            return &pt;
        }
    }
    return nullptr;
}

TrialContext::TrialContext(int d, const std::filesystem::path &cache_dir)
    : lattice(d),
      decoder(lattice),
      logicals(cache_dir.empty() ? derive_logicals(lattice) : load_or_derive_logicals(lattice, cache_dir)) {
}

uint64_t point_seed(uint64_t base_seed, int d, double p) {
    uint64_t p_bits;
    std::memcpy(&p_bits, &p, sizeof p_bits);
    return derive_key(base_seed, {uint64_t(d), p_bits});
}

TrialRecord run_trial(const TrialContext &ctx, DecoderKind decoder, double p, uint64_t base_seed, uint64_t trial) {
    TrialRecord rec;
    rec.d = ctx.lattice.d();
    rec.p = p;
    rec.trial = trial;

    uint64_t key = point_seed(base_seed, rec.d, p);
    DepolarizingChannel channel(p, key);
    PauliOp error = channel.sample_error(ctx.lattice, trial);
    Syndrome syndrome = syndrome_of(ctx.lattice, error);
    CounterRng decoder_rng(derive_key(key, {trial, 1}));

    auto start = std::chrono::steady_clock::now();
    DecodeOutcome outcome = ctx.decoder.decode(decoder, syndrome, p, decoder_rng);
    rec.decode_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
    rec.bp_ns = outcome.diagnostics.bp_ns;
    rec.matching_ns = outcome.diagnostics.matching_ns;
    rec.sweep_ns = outcome.diagnostics.sweep_ns;
    rec.status = outcome.status;
    if (outcome.status != DecodeStatus::corrected) {
        rec.failure = true;
    } else {
        rec.failure = is_logical_failure(ctx.lattice, ctx.logicals, error * outcome.correction);
    }
    return rec;
}

CampaignStats run_campaign(
    const CampaignConfig &config, const ProgressCallback &progress, std::vector<TrialRecord> *records) {
    config.validate();
    CampaignStats stats;
    stats.decoder = config.decoder;
    stats.seed = config.seed;
    if (records) {
        records->clear();
    }
    for (int d : config.d_list) {
        TrialContext ctx(d, config.cache_dir);
        for (double p : config.p_list) {
            auto start = std::chrono::steady_clock::now();
            std::vector<TrialRecord> results(config.trials);
            std::atomic<uint64_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            auto worker = [&] {
                try {
                    for (uint64_t t = next++; t < config.trials; t = next++) {
                        results[t] = run_trial(ctx, config.decoder, p, config.seed, t);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    failure = std::current_exception();
                    next = config.trials;
                }
            };
            unsigned num_workers = std::min<uint64_t>(config.workers, config.trials);
            if (num_workers <= 1) {
                worker();
            } else {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < num_workers; w++) {
                    pool.emplace_back(worker);
                }
            }
            if (failure) {
                std::rethrow_exception(failure);
            }
            PointStats pt;
            pt.d = d;
            pt.p = p;
            pt.trials = config.trials;
            for (const auto &r : results) {
                pt.failures += r.failure;
            }
            pt.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            stats.points.push_back(pt);
            if (progress) {
                progress(pt);
            }
            if (records) {
                records->insert(records->end(), results.begin(), results.end());
            }
        }
    }
    return stats;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

template <typename T>
T parse_number(const std::string &text, const char *what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::runtime_error(std::string("malformed ") + what + " field: '" + text + "'");
    }
    return value;
}

}  // namespace

void write_csv(const CampaignStats &stats, std::ostream &out, const EmitOptions &options) {
    out << "decoder,d,p,trials,failures,p_fail,stderr,seed";
    if (options.timing) {
        out << ",wall_time_s";
    }
    out << '\n';
    for (const auto &pt : stats.points) {
        out << decoder_name(stats.decoder) << ',' << pt.d << ',' << format_double(pt.p) << ',' << pt.trials << ','
            << pt.failures << ',' << format_double(pt.p_fail()) << ',' << format_double(pt.stderr_fail()) << ','
            << stats.seed;
        if (options.timing) {
            out << ',' << format_double(pt.wall_seconds);
        }
        out << '\n';
    }
}

void write_json(const CampaignStats &stats, std::ostream &out, const EmitOptions &options) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &pt : stats.points) {
        nlohmann::ordered_json row;
        row["decoder"] = decoder_name(stats.decoder);
        row["d"] = pt.d;
        row["p"] = pt.p;
        row["trials"] = pt.trials;
        row["failures"] = pt.failures;
        row["p_fail"] = pt.p_fail();
        row["stderr"] = pt.stderr_fail();
        row["seed"] = stats.seed;
        if (options.timing) {
            row["wall_time_s"] = pt.wall_seconds;
        }
        rows.push_back(std::move(row));
    }
    out << rows.dump(2) << '\n';
}

void write_plot_data(const CampaignStats &stats, std::ostream &out) {
    int current_d = -1;
    for (const auto &pt : stats.points) {
        if (pt.d != current_d) {
            if (current_d != -1) {
                out << "\n\n";
            }
            current_d = pt.d;
            out << "# decoder=" << decoder_name(stats.decoder) << " d=" << pt.d << "\n# p p_fail stderr\n";
        }
        out << format_double(pt.p) << ' ' << format_double(pt.p_fail()) << ' ' << format_double(pt.stderr_fail())
            << '\n';
    }
}

CampaignStats read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty CSV input");
    }
    std::vector<std::string> header = split_csv_line(line);
    auto column = [&](const char *name) -> int {
        for (size_t i = 0; i < header.size(); i++) {
            if (header[i] == name) {
                return int(i);
            }
        }
        return -1;
    };
    int c_decoder = column("decoder"), c_d = column("d"), c_p = column("p"), c_trials = column("trials"),
        c_failures = column("failures"), c_seed = column("seed"), c_wall = column("wall_time_s");
    if (c_decoder < 0 || c_d < 0 || c_p < 0 || c_trials < 0 || c_failures < 0 || c_seed < 0) {
        throw std::runtime_error("CSV header lacks a required column");
    }
    CampaignStats stats;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                     std::to_string(header.size()));
        }
        DecoderKind decoder;
        try {
            decoder = parse_decoder(cells[c_decoder]);
        } catch (const std::invalid_argument &e) {
            throw std::runtime_error(e.what());
        }
        uint64_t seed = parse_number<uint64_t>(cells[c_seed], "seed");
        if (first) {
            stats.decoder = decoder;
            stats.seed = seed;
            first = false;
        } else if (decoder != stats.decoder || seed != stats.seed) {
            throw std::runtime_error("CSV mixes decoders or seeds");
        }
        PointStats pt;
        pt.d = parse_number<int>(cells[c_d], "d");
        pt.p = parse_number<double>(cells[c_p], "p");
        pt.trials = parse_number<uint64_t>(cells[c_trials], "trials");
        pt.failures = parse_number<uint64_t>(cells[c_failures], "failures");
        if (pt.failures > pt.trials) {
            throw std::runtime_error("CSV row has more failures than trials");
        }
        if (c_wall >= 0) {
            pt.wall_seconds = parse_number<double>(cells[c_wall], "wall_time_s");
        }
        stats.points.push_back(pt);
    }
    return stats;
}

void emit_results(const CampaignStats &stats, const std::filesystem::path &path, const std::string &format,
                  const EmitOptions &options) {
    if (format != "csv" && format != "json") {
        throw std::invalid_argument("format must be csv or json");
    }
    {
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        }
        if (format == "csv") {
            write_csv(stats, out, options);
        } else {
            write_json(stats, out, options);
        }
        if (!out) {
            throw std::runtime_error("failed writing " + path.string());
        }
    }
    auto plot_path = path;
    plot_path.replace_extension(".plot.dat");
    std::ofstream plot(plot_path);
    if (!plot) {
        throw std::runtime_error("cannot open " + plot_path.string() + " for writing");
    }
    write_plot_data(stats, plot);
}

}  // namespace chamon
