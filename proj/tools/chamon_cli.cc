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


// Command-line front end: simulate, threshold, logicals, selftest.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "chamon/harness.h"
#include "chamon/selftest.h"
#include "chamon/threshold.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitSelftest = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

double parse_double(const std::string &s) {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) {
        throw std::invalid_argument("not a number: " + s);
    }
    return v;
}

// "0.03,0.04" or "lo:hi:step" (inclusive of hi up to rounding).
std::vector<double> parse_rates(const std::string &spec) {
    std::vector<double> out;
    for (const auto &item : split(spec, ',')) {
        auto range = split(item, ':');
        if (range.size() == 1) {
            out.push_back(parse_double(range[0]));
        } else if (range.size() == 3) {
            double lo = parse_double(range[0]);
            double hi = parse_double(range[1]);
            double step = parse_double(range[2]);
            if (!(step > 0) || hi < lo) {
                throw std::invalid_argument("bad range: " + item);
            }
            long count = std::lround(std::floor((hi - lo) / step + 1e-9));
            for (long k = 0; k <= count; k++) {
                // Round to 12 digits so 0.035 + 3 * 0.005 prints as 0.05.
                out.push_back(std::round((lo + double(k) * step) * 1e12) / 1e12);
            }
        } else {
            throw std::invalid_argument("bad rate list entry: " + item);
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("empty rate list");
    }
    return out;
}

std::vector<int> parse_distances(const std::string &spec) {
    std::vector<int> out;
    for (const auto &item : split(spec, ',')) {
        size_t used = 0;
        int d = std::stoi(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("not an integer: " + item);
        }
        out.push_back(d);
    }
    return out;
}

// Reads key=value lines and turns them into "--key value" tokens. Blank lines
// and lines starting with '#' are skipped.
std::vector<std::string> config_tokens(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path);
    }
    std::vector<std::string> tokens;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        line_number++;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(line_number) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "config") {
            throw std::invalid_argument(path + ": nested config files are not supported");
        }
        if (key == "no-timing" || key == "quiet") {
            if (value == "true" || value == "1") {
                tokens.push_back("--" + key);
            }
            continue;
        }
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return tokens;
}

// Expands --config into tokens placed ahead of the command-line flags, so that
// later occurrences (the explicit flags) win.
std::vector<std::string> expand_config(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    std::vector<std::string> rest;
    for (size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw std::invalid_argument("--config needs a path");
            }
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty()) {
        return rest;
    }
    std::vector<std::string> from_file = config_tokens(config_path);
    if (rest.empty() || rest[0].rfind("-", 0) == 0) {
        throw std::invalid_argument("--config must follow a subcommand");
    }
    std::vector<std::string> out{rest[0]};
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

struct SimulateArgs {
    std::string decoder = "basic";
    std::string d = "8,12,16";
    std::string p;
    uint64_t trials = 1000;
    uint64_t seed = 1;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out = "-";
    std::string format = "csv";
    std::string cache_dir = ".chamon_cache";
    bool no_timing = false;
    bool quiet = false;
};

int run_simulate(const SimulateArgs &args) {
    chamon::CampaignConfig config;
    config.decoder = chamon::parse_decoder(args.decoder);
    config.d_list = parse_distances(args.d);
    config.p_list = parse_rates(args.p);
    config.trials = args.trials;
    config.seed = args.seed;
    config.workers = args.workers;
    config.cache_dir = args.cache_dir;
    config.validate();
    if (args.format != "csv" && args.format != "json") {
        throw std::invalid_argument("--format must be csv or json");
    }

    auto progress = [&](const chamon::PointStats &pt) {
        if (!args.quiet) {
            std::fprintf(stderr, "d=%d p=%g failures=%llu/%llu p_fail=%.5f +- %.5f (%.1fs)\n", pt.d, pt.p,
                         (unsigned long long)pt.failures, (unsigned long long)pt.trials, pt.p_fail(), pt.stderr_fail(),
                         pt.wall_seconds);
        }
    };
    chamon::CampaignStats stats = chamon::run_campaign(config, progress);
    chamon::EmitOptions options{.timing = !args.no_timing};
    if (args.out == "-") {
        if (args.format == "csv") {
            chamon::write_csv(stats, std::cout, options);
        } else {
            chamon::write_json(stats, std::cout, options);
        }
        return kExitOk;
    }
    try {
        chamon::emit_results(stats, args.out, args.format, options);
    } catch (const std::runtime_error &e) {
        throw IoError(e.what());
    }
    return kExitOk;
}

struct ThresholdArgs {
    std::string in;
    std::string window;
    std::string d;
};

int run_threshold(const ThresholdArgs &args) {
    std::ifstream in(args.in);
    if (!in) {
        throw IoError("cannot read " + args.in);
    }
    chamon::CampaignStats stats;
    try {
        stats = chamon::read_csv(in);
    } catch (const std::runtime_error &e) {
        throw IoError(args.in + ": " + e.what());
    }
    std::optional<std::pair<double, double>> window;
    if (!args.window.empty()) {
        auto bounds = split(args.window, args.window.find(':') != std::string::npos ? ':' : ',');
        if (bounds.size() != 2) {
            throw std::invalid_argument("--window expects lo:hi");
        }
        window = std::pair{parse_double(bounds[0]), parse_double(bounds[1])};
        if (!(window->first < window->second)) {
            throw std::invalid_argument("--window needs lo < hi");
        }
    }
    std::vector<int> distances;
    if (!args.d.empty()) {
        distances = parse_distances(args.d);
    }
    chamon::ThresholdEstimate est = chamon::estimate_threshold(stats, distances, window);
    std::printf("decoder %s\n", std::string(chamon::decoder_name(stats.decoder)).c_str());
    std::printf("window %.6g %.6g\n", est.window_lo, est.window_hi);
    for (const auto &fit : est.fits) {
        std::printf("fit d=%d points=%zu p_fail = %.6g + %.6g * p\n", fit.d, fit.num_points, fit.intercept, fit.slope);
    }
    for (const auto &c : est.crossings) {
        std::printf("crossing d=%d,%d p=%.6g sigma=%.3g\n", c.d_small, c.d_large, c.p, c.sigma);
    }
    if (est.found) {
        std::printf("threshold %.6g +- %.3g\n", est.p_star, est.uncertainty);
    } else {
        std::printf("%s\n", est.message.c_str());
    }
    return kExitOk;
}

struct LogicalsArgs {
    int d = 8;
    std::string cache_dir = ".chamon_cache";
    std::string out;
};

int run_logicals(const LogicalsArgs &args) {
    chamon::ChamonLattice lattice(args.d);
    chamon::LogicalBasis basis;
    try {
        basis = chamon::load_or_derive_logicals(lattice, args.cache_dir);
    } catch (const std::runtime_error &e) {
        throw IoError(e.what());
    }
    bool valid = chamon::validate_logicals(lattice, basis, basis.k());
    std::printf("d=%d n=%zu k=%zu pairing=%s\n", args.d, lattice.num_qubits(), basis.k(), valid ? "ok" : "BROKEN");
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        if (!out) {
            throw IoError("cannot open " + args.out + " for writing");
        }
        chamon::write_logicals(basis, out);
    }
    return valid ? kExitOk : kExitSelftest;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Decoders for the Chamon code"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string unused_config;
    auto add_config = [&](CLI::App *sub) {
        sub->add_option("--config", unused_config, "key=value file supplying flags; explicit flags override");
    };

    SimulateArgs sim;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo logical failure rates");
    simulate->add_option("--decoder", sim.decoder, "basic | greedy | belief")->capture_default_str();
    simulate->add_option("--d", sim.d, "comma-separated even distances")->capture_default_str();
    simulate->add_option("--p", sim.p, "rates: list 0.03,0.04 or range lo:hi:step")->required();
    simulate->add_option("--trials", sim.trials, "trials per point")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "base seed")->capture_default_str();
    simulate->add_option("--workers", sim.workers, "worker threads")->capture_default_str();
    simulate->add_option("--out", sim.out, "output file, - for stdout")->capture_default_str();
    simulate->add_option("--format", sim.format, "csv | json")->capture_default_str();
    simulate->add_option("--cache-dir", sim.cache_dir, "logical basis cache")->capture_default_str();
    simulate->add_flag("--no-timing", sim.no_timing, "omit wall time for byte-reproducible output");
    simulate->add_flag("--quiet", sim.quiet, "no progress on stderr");
    add_config(simulate);

    ThresholdArgs thr;
    auto *threshold = app.add_subcommand("threshold", "Estimate the crossing point from a simulate CSV");
    threshold->add_option("--in,input", thr.in, "CSV written by simulate")->required();
    threshold->add_option("--window", thr.window, "fit window lo:hi (default +-20% around the coarse crossing)");
    threshold->add_option("--d", thr.d, "distances to use (default all)");
    add_config(threshold);

    LogicalsArgs log;
    auto *logicals = app.add_subcommand("logicals", "Derive and cache the logical basis");
    logicals->add_option("--d", log.d, "distance")->capture_default_str();
    logicals->add_option("--cache-dir", log.cache_dir, "cache directory")->capture_default_str();
    logicals->add_option("--out", log.out, "also write the basis here");
    add_config(logicals);

    auto *selftest = app.add_subcommand("selftest", "Run the property checks");
    add_config(selftest);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*simulate) {
            return run_simulate(sim);
        }
        if (*threshold) {
            return run_threshold(thr);
        }
        if (*logicals) {
            return run_logicals(log);
        }
        return chamon::run_selftest(std::cout) ? kExitOk : kExitSelftest;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
