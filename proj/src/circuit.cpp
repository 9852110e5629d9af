// Copyright 2026 The openqs Authors
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

#include "openqs/circuit.hpp"

#include <algorithm>

namespace openqs {

Circuit::Circuit(std::size_t n_qubits, std::vector<GateOp> elements)
    : n_qubits_(n_qubits), elements_(std::move(elements)) {
    dim_of(n_qubits_);
    for (const GateOp &g : elements_) {
        g.validate(n_qubits_);
    }
}

Circuit &Circuit::append(GateOp gate) {
    gate.validate(n_qubits_);
    elements_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_qubits() != n_qubits_) {
        throw std::invalid_argument("cannot concatenate circuits on different registers");
    }
    elements_.insert(elements_.end(), other.elements_.begin(), other.elements_.end());
    return *this;
}

bool Circuit::is_coherent() const {
    return std::all_of(elements_.begin(), elements_.end(), [](const GateOp &g) { return g.is_coherent(); });
}

GateCounts count_gates(const Circuit &circ) {
    GateCounts counts;
    for (const GateOp &g : circ.elements()) {
        const auto &k = g.kind();
        if (std::holds_alternative<MS>(k)) {
            ++counts.entangling;
        } else if (std::holds_alternative<CollectiveRot>(k)) {
            ++counts.collective;
        } else if (std::holds_alternative<SingleZ>(k)) {
            ++counts.single_qubit;
        } else {
            ++counts.dissipative;
        }
    }
    return counts;
}

Matrix circuit_unitary(const Circuit &circ) {
    auto d = static_cast<Eigen::Index>(dim_of(circ.n_qubits()));
    Matrix u = Matrix::Identity(d, d);
    for (const GateOp &g : circ.elements()) {
        u = unitary_of(g, circ.n_qubits()) * u;
    }
    return u;
}

CompiledCircuit::CompiledCircuit(const Circuit &circ) : n_qubits_(circ.n_qubits()) {
    std::optional<Matrix> pending;
    for (const GateOp &g : circ.elements()) {
        if (g.is_coherent()) {
            Matrix u = unitary_of(g, n_qubits_);
            pending = pending ? Matrix(u * *pending) : u;
            continue;
        }
        if (pending) {
            segments_.push_back({std::move(pending), std::nullopt});
            pending.reset();
        }
        segments_.push_back({std::nullopt, g});
    }
    if (pending) {
        segments_.push_back({std::move(pending), std::nullopt});
    }
}

Matrix CompiledCircuit::evolve(const Matrix &op) const {
    auto d = static_cast<Eigen::Index>(dim_of(n_qubits_));
    if (op.rows() != d || op.cols() != d) {
        throw std::invalid_argument("operator dimension does not match circuit register");
    }
    Matrix cur = op;
    for (const Segment &s : segments_) {
        if (s.unitary) {
            cur = *s.unitary * cur * s.unitary->adjoint();
        } else {
            cur = apply_gate_operator(*s.dissipative, cur, n_qubits_);
        }
    }
    return cur;
}

Matrix evolve_operator(const Circuit &circ, const Matrix &op) { return CompiledCircuit(circ).evolve(op); }

DensityMatrix run_circuit(const Circuit &circ, const DensityMatrix &rho0) {
    if (rho0.n_qubits() != circ.n_qubits()) {
        throw std::invalid_argument("run_circuit: state has " + std::to_string(rho0.n_qubits()) +
                                    " qubits, circuit has " + std::to_string(circ.n_qubits()));
    }
    return DensityMatrix(circ.n_qubits(), evolve_operator(circ, rho0.data()));
}

}  // namespace openqs
