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

#include "chamon/pauli.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "chamon/gf2.h"

namespace chamon {

char pauli_char(Pauli p) {
    return "IXZY"[static_cast<uint8_t>(p)];
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli character: ") + c);
    }
}

size_t PauliOp::weight() const {
    size_t total = 0;
    auto xw = x.words();
    auto zw = z.words();
    for (size_t w = 0; w < xw.size(); w++) {
        total += std::popcount(xw[w] | zw[w]);
    }
    return total;
}

std::string PauliOp::str() const {
    std::string out(num_qubits(), 'I');
    for (size_t q = 0; q < num_qubits(); q++) {
        out[q] = pauli_char(get(q));
    }
    return out;
}

bool commutes(const PauliOp &a, const PauliOp &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("commutes: operators act on different qubit counts");
    }
    return a.x.dot(b.z) == a.z.dot(b.x);
}

Syndrome syndrome_of(const ChamonLattice &lattice, const PauliOp &error) {
    Syndrome out(lattice.num_stabilizers());
    auto xw = error.x.words();
    auto zw = error.z.words();
    for (size_t w = 0; w < xw.size(); w++) {
        uint64_t support = xw[w] | zw[w];
        while (support) {
            uint32_t q = uint32_t(w * 64 + std::countr_zero(support));
            support &= support - 1;
            for (uint32_t s : lattice.diamond(q, error.get(q))) {
                out.flip(s);
            }
        }
    }
    return out;
}

BitVector to_symplectic(const PauliOp &op) {
    size_t n = op.num_qubits();
    BitVector v(2 * n);
    for (size_t q : op.x.ones()) {
        v.set(q);
    }
    for (size_t q : op.z.ones()) {
        v.set(n + q);
    }
    return v;
}

PauliOp from_symplectic(const BitVector &v) {
    size_t n = v.size() / 2;
    PauliOp op(n);
    for (size_t c : v.ones()) {
        if (c < n) {
            op.x.set(c);
        } else {
            op.z.set(c - n);
        }
    }
    return op;
}

namespace {

bool symplectic_product(const BitVector &a, const BitVector &b, size_t n) {
    bool acc = false;
    for (size_t c : a.ones()) {
        acc ^= c < n ? b[c + n] : b[c - n];
    }
    return acc;
}

}  // namespace

LogicalBasis derive_logicals(const ChamonLattice &lattice) {
    size_t n = lattice.num_qubits();
    std::vector<BitVector> stabs = check_matrix(lattice);

    // v is in the normalizer iff the swapped-half rows annihilate it.
    std::vector<BitVector> swapped;
    swapped.reserve(n);
    for (const auto &row : stabs) {
        BitVector s(2 * n);
        for (size_t c : row.ones()) {
            s.set(c < n ? c + n : c - n);
        }
        swapped.push_back(std::move(s));
    }
    std::vector<BitVector> normalizer = gf2_kernel(std::move(swapped), 2 * n);

    Gf2Echelon echelon(2 * n);
    for (const auto &row : stabs) {
        echelon.insert(row);
    }
    size_t rank = echelon.rank();
    size_t target = normalizer.size();
    std::vector<BitVector> extension;
    for (const auto &v : normalizer) {
        if (echelon.rank() == target) {
            break;
        }
        if (echelon.insert(v)) {
            extension.push_back(v);
        }
    }
    if (extension.size() != 2 * (n - rank)) {
        throw std::logic_error("derive_logicals: normalizer extension has unexpected size");
    }

    LogicalBasis basis;
    basis.d = lattice.d();
    while (!extension.empty()) {
        BitVector a = std::move(extension.front());
        extension.erase(extension.begin());
        size_t partner = extension.size();
        for (size_t i = 0; i < extension.size(); i++) {
            if (symplectic_product(a, extension[i], n)) {
                partner = i;
                break;
            }
        }
        if (partner == extension.size()) {
            throw std::logic_error("derive_logicals: logical without symplectic partner");
        }
        BitVector b = std::move(extension[partner]);
        extension.erase(extension.begin() + partner);
        for (auto &c : extension) {
            bool with_a = symplectic_product(c, a, n);
            bool with_b = symplectic_product(c, b, n);
            if (with_b) {
                c ^= a;
            }
            if (with_a) {
                c ^= b;
            }
        }
        basis.pairs.emplace_back(from_symplectic(a), from_symplectic(b));
    }
    return basis;
}

bool validate_logicals(const ChamonLattice &lattice, const LogicalBasis &basis, size_t expected_k) {
    if (basis.k() != expected_k || basis.d != lattice.d()) {
        return false;
    }
    size_t n = lattice.num_qubits();
    std::vector<const PauliOp *> ops;
    for (const auto &[a, b] : basis.pairs) {
        if (a.num_qubits() != n || b.num_qubits() != n) {
            return false;
        }
        ops.push_back(&a);
        ops.push_back(&b);
    }
    for (const PauliOp *op : ops) {
        if (syndrome_of(lattice, *op).any()) {
            return false;
        }
    }
    for (size_t i = 0; i < ops.size(); i++) {
        for (size_t j = i + 1; j < ops.size(); j++) {
            bool paired = (i % 2 == 0) && (j == i + 1);
            if (commutes(*ops[i], *ops[j]) == paired) {
                return false;
            }
        }
    }
    return true;
}

void write_logicals(const LogicalBasis &basis, std::ostream &out) {
    out << "chamon-logicals v1\n";
    out << "d " << basis.d << "\n";
    out << "k " << basis.k() << "\n";
    for (const auto &[a, b] : basis.pairs) {
        for (const PauliOp *op : {&a, &b}) {
            BitVector v = to_symplectic(*op);
            out << "L";
            for (size_t c : v.ones()) {
                out << ' ' << c;
            }
            out << '\n';
        }
    }
    out << "end\n";
}

std::optional<LogicalBasis> read_logicals(const ChamonLattice &lattice, std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "chamon-logicals v1") {
        return std::nullopt;
    }
    std::string key;
    int d = 0;
    size_t k = 0;
    if (!(in >> key >> d) || key != "d" || d != lattice.d()) {
        return std::nullopt;
    }
    if (!(in >> key >> k) || key != "k") {
        return std::nullopt;
    }
    std::getline(in, line);
    size_t n = lattice.num_qubits();
    LogicalBasis basis;
    basis.d = d;
    std::vector<PauliOp> ops;
    for (size_t i = 0; i < 2 * k; i++) {
        if (!std::getline(in, line)) {
            return std::nullopt;
        }
        std::istringstream row(line);
        std::string tag;
        if (!(row >> tag) || tag != "L") {
            return std::nullopt;
        }
        BitVector v(2 * n);
        size_t c;
        while (row >> c) {
            if (c >= 2 * n) {
                return std::nullopt;
            }
            v.set(c);
        }
        if (!row.eof()) {
            return std::nullopt;
        }
        ops.push_back(from_symplectic(v));
    }
    if (!std::getline(in, line) || line != "end") {
        return std::nullopt;
    }
    for (size_t i = 0; i < k; i++) {
        basis.pairs.emplace_back(std::move(ops[2 * i]), std::move(ops[2 * i + 1]));
    }
    if (!validate_logicals(lattice, basis, k)) {
        return std::nullopt;
    }
    return basis;
}

LogicalBasis load_or_derive_logicals(const ChamonLattice &lattice, const std::filesystem::path &cache_dir) {
    auto path = cache_dir / ("logicals_d" + std::to_string(lattice.d()) + ".txt");
    {
        std::ifstream in(path);
        if (in) {
            if (auto cached = read_logicals(lattice, in)) {
                return std::move(*cached);
            }
        }
    }
    LogicalBasis basis = derive_logicals(lattice);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (out) {
            write_logicals(basis, out);
        }
    }
    std::filesystem::rename(tmp, path, ec);
    return basis;
}

bool is_logical_failure(const ChamonLattice &lattice, const LogicalBasis &basis, const PauliOp &residual) {
    if (syndrome_of(lattice, residual).any()) {
        throw std::invalid_argument("is_logical_failure: residual has a nonzero syndrome");
    }
    for (const auto &[a, b] : basis.pairs) {
        if (!commutes(residual, a) || !commutes(residual, b)) {
            return true;
        }
    }
    return false;
}

}  // namespace chamon
