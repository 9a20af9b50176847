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

#include "chamon/noise.h"

#include <stdexcept>
#include <string>

namespace chamon {

DepolarizingChannel::DepolarizingChannel(double p, uint64_t seed) : p_(p), seed_(seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing rate must lie in [0, 1], got " + std::to_string(p));
    }
}

PauliOp DepolarizingChannel::sample_error(const ChamonLattice &lattice, uint64_t draw_index) const {
    CounterRng rng(derive_key(seed_, {draw_index}));
    return sample_error(lattice.num_qubits(), rng);
}

PauliOp DepolarizingChannel::sample_error(size_t num_qubits, CounterRng &rng) const {
    PauliOp error(num_qubits);
    double third = p_ / 3.0;
    for (size_t q = 0; q < num_qubits; q++) {
        double u = rng.uniform();
        if (u < third) {
            error.set(q, Pauli::X);
        } else if (u < 2 * third) {
            error.set(q, Pauli::Y);
        } else if (u < p_) {
            error.set(q, Pauli::Z);
        }
    }
    return error;
}

}  // namespace chamon
