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


#include "chamon/selftest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "chamon/harness.h"

namespace chamon {
namespace {

SelftestCheck plane_checks() {
    SelftestCheck check{"symmetry planes", true, ""};
    for (int d : {4, 6, 8}) {
        ChamonLattice lattice(d);
        auto planes = enumerate_symmetries(lattice);
        if (planes.size() != size_t(2 * d)) {
            check.passed = false;
            check.detail = "d=" + std::to_string(d) + ": " + std::to_string(planes.size()) + " planes";
            return check;
        }
        for (const auto &plane : planes) {
            PauliOp product(lattice.num_qubits());
            for (uint32_t s : plane.members) {
                product *= stabilizer_support(lattice, lattice.stabilizer_coord(s));
            }
            if (!product.is_identity()) {
                check.passed = false;
                check.detail = "d=" + std::to_string(d) + ": plane product is not the identity";
                return check;
            }
        }
    }
    check.detail = "2d planes, products trivial for d=4,6,8";
    return check;
}

SelftestCheck diamond_checks() {
    SelftestCheck check{"single-qubit defects", true, ""};
    for (int d : {4, 6, 8}) {
        ChamonLattice lattice(d);
        auto planes = enumerate_symmetries(lattice);
        std::vector<int> plane_count(planes.size());
        for (uint32_t q = 0; q < lattice.num_qubits(); q++) {
            for (Pauli p : kNonTrivialPaulis) {
                PauliOp error(lattice.num_qubits());
                error.set(q, p);
                Syndrome syndrome = syndrome_of(lattice, error);
                if (syndrome.popcount() != 4) {
                    check.passed = false;
                    check.detail = "d=" + std::to_string(d) + ": defect count " + std::to_string(syndrome.popcount());
                    return check;
                }
                std::fill(plane_count.begin(), plane_count.end(), 0);
                for (size_t s : syndrome.ones()) {
                    Coord c = lattice.stabilizer_coord(uint32_t(s));
                    for (int o = 0; o < 4; o++) {
                        plane_count[size_t(plane_index(lattice, o, c))]++;
                    }
                }
                for (int count : plane_count) {
                    if (count != 0 && count != 2) {
                        check.passed = false;
                        check.detail = "d=" + std::to_string(d) + ": plane meets a diamond in " + std::to_string(count);
                        return check;
                    }
                }
            }
        }
    }
    check.detail = "4 defects, 0 or 2 per plane, for d=4,6,8";
    return check;
}

double brute_force_matching(const DefectMetric &metric, std::vector<int> &unmatched) {
    if (unmatched.empty()) {
        return 0;
    }
    int first = unmatched.back();
    unmatched.pop_back();
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < unmatched.size(); k++) {
        int other = unmatched[k];
        std::swap(unmatched[k], unmatched.back());
        unmatched.pop_back();
        best = std::min(best, metric.at(size_t(first), size_t(other)) + brute_force_matching(metric, unmatched));
        unmatched.push_back(other);
        std::swap(unmatched[k], unmatched.back());
    }
    unmatched.push_back(first);
    return best;
}

SelftestCheck matching_checks() {
    SelftestCheck check{"matching vs brute force", true, ""};
    ChamonLattice lattice(8);
    auto planes = enumerate_symmetries(lattice);
    CounterRng rng(derive_key(0x5e1f7e57, {1}));
    constexpr int kInstances = 1000;
    for (int instance = 0; instance < kInstances; instance++) {
        size_t plane_number = rng.below(planes.size());
        QubitWeights weights(3 * lattice.num_qubits());
        for (double &w : weights) {
            w = 0.05 + 4.0 * rng.uniform();
        }
        PlaneGraph graph = build_plane_graph(lattice, planes[plane_number], int(plane_number), weights);
        std::vector<uint32_t> nodes = graph.nodes;
        size_t m = 2 * (1 + rng.below(4));
        for (size_t k = 0; k < m; k++) {
            std::swap(nodes[k], nodes[k + rng.below(nodes.size() - k)]);
        }
        nodes.resize(m);
        DefectMetric metric = defect_distances(graph, nodes);
        MatchingResult result = min_weight_perfect_matching(metric);
        std::vector<int> unmatched(m);
        std::iota(unmatched.begin(), unmatched.end(), 0);
        double best = brute_force_matching(metric, unmatched);
        if (result.pairs.size() != m / 2 || std::abs(result.total_weight - best) > 1e-6 * (1 + best)) {
            std::ostringstream msg;
            msg << "instance " << instance << ": blossom " << result.total_weight << " vs " << best;
            check.passed = false;
            check.detail = msg.str();
            return check;
        }
    }
    check.detail = std::to_string(kInstances) + " instances agree";
    return check;
}

SelftestCheck logical_checks() {
    SelftestCheck check{"logical basis", true, ""};
    for (int d : {4, 6}) {
        ChamonLattice lattice(d);
        LogicalBasis basis = derive_logicals(lattice);
        if (!validate_logicals(lattice, basis, size_t(2 * d))) {
            check.passed = false;
            check.detail = "d=" + std::to_string(d) + ": symplectic pairing violated";
            return check;
        }
    }
    check.detail = "k=2d, symplectic pairs for d=4,6";
    return check;
}

SelftestCheck sweep_checks() {
    SelftestCheck check{"single-error correction", true, ""};
    for (int d : {4, 6}) {
        TrialContext ctx(d, {});
        CounterRng rng(derive_key(0x5e1f7e57, {2, uint64_t(d)}));
        for (uint32_t q = 0; q < ctx.lattice.num_qubits(); q++) {
            for (Pauli p : kNonTrivialPaulis) {
                PauliOp error(ctx.lattice.num_qubits());
                error.set(q, p);
                DecodeOutcome outcome = ctx.decoder.decode_basic(syndrome_of(ctx.lattice, error), rng);
                PauliOp residual = error;
                residual *= outcome.correction;
                bool ok = outcome.status == DecodeStatus::corrected &&
                          syndrome_of(ctx.lattice, residual).none() &&
                          !is_logical_failure(ctx.lattice, ctx.logicals, residual);
                if (!ok) {
                    check.passed = false;
                    check.detail = "d=" + std::to_string(d) + ": qubit " + std::to_string(q) + " " + pauli_char(p) +
                                   " not corrected";
                    return check;
                }
            }
        }
    }
    check.detail = "every single-qubit error corrected for d=4,6";
    return check;
}

SelftestCheck stderr_check() {
    SelftestCheck check{"stderr formula", true, ""};
    double value = failure_stderr(0.5, 100);
    check.passed = std::abs(value - 0.05) < 1e-15;
    check.detail = "P=0.5, N=100 -> " + std::to_string(value);
    return check;
}

SelftestCheck determinism_check() {
    SelftestCheck check{"worker determinism", true, ""};
    CampaignConfig config;
    config.decoder = DecoderKind::belief;
    config.d_list = {4, 6};
    config.p_list = {0.05, 0.12};
    config.trials = 60;
    config.seed = 20260;
    std::string reference;
    for (unsigned workers : {1u, 2u, 3u}) {
        config.workers = workers;
        std::ostringstream csv;
        write_csv(run_campaign(config), csv, EmitOptions{.timing = false});
        if (workers == 1) {
            reference = csv.str();
        } else if (csv.str() != reference) {
            check.passed = false;
            check.detail = std::to_string(workers) + " workers changed the output";
            return check;
        }
    }
    check.detail = "CSV identical for 1, 2, 3 workers";
    return check;
}

}  // namespace

std::vector<SelftestCheck> run_selftest_checks() {
    std::vector<SelftestCheck> checks;
    for (auto fn : {plane_checks, diamond_checks, matching_checks, logical_checks, sweep_checks, stderr_check,
                    determinism_check}) {
        try {
            checks.push_back(fn());
        } catch (const std::exception &e) {
            checks.push_back({"exception", false, e.what()});
        }
    }
    return checks;
}

bool run_selftest(std::ostream &out) {
    bool all = true;
    for (const auto &check : run_selftest_checks()) {
        out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
        all = all && check.passed;
    }
    return all;
}

}  // namespace chamon
