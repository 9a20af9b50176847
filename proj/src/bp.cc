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

#include "chamon/bp.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace chamon {

TannerGraph::TannerGraph(const ChamonLattice &lattice) : num_qubits(lattice.num_qubits()) {
    size_t n = num_qubits;
    check_vars.reserve(kCheckDegree * n);
    for (uint32_t s = 0; s < n; s++) {
        for (const QubitPauli &t : lattice.stabilizer_terms(s)) {
            if (has_z(t.pauli)) {
                check_vars.push_back(t.qubit);
            }
            if (has_x(t.pauli)) {
                check_vars.push_back(uint32_t(n + t.qubit));
            }
        }
    }
    if (check_vars.size() != kCheckDegree * n) {
        throw std::logic_error("TannerGraph: unexpected check degree");
    }
    std::vector<uint32_t> fill(2 * n, 0);
    var_edges.assign(kVariableDegree * 2 * n, 0);
    for (uint32_t e = 0; e < check_vars.size(); e++) {
        uint32_t v = check_vars[e];
        if (fill[v] >= kVariableDegree) {
            throw std::logic_error("TannerGraph: unexpected variable degree");
        }
        var_edges[kVariableDegree * v + fill[v]++] = e;
    }
}

std::vector<double> depolarizing_bit_priors(size_t num_qubits, double p) {
    return std::vector<double>(2 * num_qubits, 2.0 * p / 3.0);
}

namespace {

double clamp_llr(double v) {
    return std::clamp(v, -kLlrClamp, kLlrClamp);
}

}  // namespace

BpResult bp_decode(const TannerGraph &graph, const Syndrome &syndrome, std::span<const double> priors, int max_iters) {
    if (max_iters <= 0) {
        throw std::invalid_argument("bp_decode: max_iters must be positive");
    }
    size_t n = graph.num_qubits;
    size_t num_vars = graph.num_variables();
    if (priors.size() != num_vars) {
        throw std::invalid_argument("bp_decode: need one prior per variable bit");
    }
    if (syndrome.size() != graph.num_checks()) {
        throw std::invalid_argument("bp_decode: syndrome length mismatch");
    }
    std::vector<double> prior_llr(num_vars);
    for (size_t v = 0; v < num_vars; v++) {
        double p = priors[v];
        if (!(p > 0.0 && p < 1.0)) {
            throw std::invalid_argument("bp_decode: prior outside (0, 1)");
        }
        prior_llr[v] = clamp_llr(std::log((1.0 - p) / p));
    }

    constexpr int D = TannerGraph::kCheckDegree;
    size_t num_edges = graph.check_vars.size();
    std::vector<double> var_to_check(num_edges);
    std::vector<double> check_to_var(num_edges, 0.0);
    for (size_t e = 0; e < num_edges; e++) {
        var_to_check[e] = prior_llr[graph.check_vars[e]];
    }
    std::vector<double> total(prior_llr);
    std::vector<uint8_t> hard(num_vars, 0);

    BpResult result;
    std::vector<double> tanh_half(num_edges);
    std::vector<double> ratio(num_edges);
    for (int iter = 1; iter <= max_iters; iter++) {
        result.iterations = iter;
        // tanh(x / 2) = 1 - 2 / (e^x + 1); flat loops so exp/log vectorize.
        for (size_t e = 0; e < num_edges; e++) {
            tanh_half[e] = 1.0 - 2.0 / (std::exp(var_to_check[e]) + 1.0);
        }
        for (size_t c = 0; c < n; c++) {
            const double *t = &tanh_half[D * c];
            double prefix[D + 1];
            double suffix[D + 1];
            prefix[0] = 1.0;
            suffix[D] = 1.0;
            for (int k = 0; k < D; k++) {
                prefix[k + 1] = prefix[k] * t[k];
                suffix[D - 1 - k] = suffix[D - k] * t[D - 1 - k];
            }
            double sign = syndrome[c] ? -1.0 : 1.0;
            double *out = &ratio[D * c];
            for (int k = 0; k < D; k++) {
                double prod = std::clamp(sign * prefix[k] * suffix[k + 1], -1.0 + 1e-15, 1.0 - 1e-15);
                out[k] = (1.0 + prod) / (1.0 - prod);
            }
        }
        // 2 atanh(y) = ln((1 + y) / (1 - y))
        for (size_t e = 0; e < num_edges; e++) {
            check_to_var[e] = std::clamp(std::log(ratio[e]), -kLlrClamp, kLlrClamp);
        }

        for (size_t v = 0; v < num_vars; v++) {
            const uint32_t *edges = &graph.var_edges[TannerGraph::kVariableDegree * v];
            double sum = prior_llr[v];
            for (int k = 0; k < TannerGraph::kVariableDegree; k++) {
                sum += check_to_var[edges[k]];
            }
            for (int k = 0; k < TannerGraph::kVariableDegree; k++) {
                var_to_check[edges[k]] = clamp_llr(sum - check_to_var[edges[k]]);
            }
            total[v] = clamp_llr(sum);
            hard[v] = total[v] < 0;
        }

        bool reproduced = true;
        for (size_t c = 0; c < n && reproduced; c++) {
            uint8_t parity = 0;
            for (int k = 0; k < D; k++) {
                parity ^= hard[graph.check_vars[D * c + k]];
            }
            reproduced = parity == uint8_t(syndrome[c]);
        }
        if (reproduced) {
            result.converged = true;
            break;
        }
    }

    result.hard_decision = PauliOp(n);
    result.soft.probabilities.resize(n);
    for (size_t q = 0; q < n; q++) {
        if (hard[q]) {
            result.hard_decision.x.set(q);
        }
        if (hard[n + q]) {
            result.hard_decision.z.set(q);
        }
        double mx = 1.0 / (1.0 + std::exp(total[q]));
        double mz = 1.0 / (1.0 + std::exp(total[n + q]));
        double px = mx * (1.0 - mz);
        double pz = mz * (1.0 - mx);
        double py = mx * mz;
        result.soft.probabilities[q] = {(1.0 - mx) * (1.0 - mz), px, py, pz};
    }
    result.posterior_llr = std::move(total);
    return result;
}

void write_llrs(const BpResult &result, std::ostream &out) {
    size_t n = result.posterior_llr.size() / 2;
    for (size_t q = 0; q < n; q++) {
        out << q << ' ' << result.posterior_llr[q] << ' ' << result.posterior_llr[n + q] << '\n';
    }
}

}  // namespace chamon
