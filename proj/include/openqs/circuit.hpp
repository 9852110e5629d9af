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

#ifndef OPENQS_CIRCUIT_HPP
#define OPENQS_CIRCUIT_HPP

#include <optional>
#include <vector>

#include "openqs/gates.hpp"

namespace openqs {

/// Ordered gate list on an ancilla (qubit 0) plus system register.
/// Elements are stored in application order.
class Circuit {
   public:
    explicit Circuit(std::size_t n_qubits, std::vector<GateOp> elements = {});

    std::size_t n_qubits() const { return n_qubits_; }
    const std::vector<GateOp> &elements() const { return elements_; }
    bool empty() const { return elements_.empty(); }
    std::size_t size() const { return elements_.size(); }

    Circuit &append(GateOp gate);
    Circuit &append(const Circuit &other);

    bool is_coherent() const;

   private:
    std::size_t n_qubits_;
    std::vector<GateOp> elements_;
};

struct GateCounts {
    std::size_t entangling = 0;  // MS gates
    std::size_t collective = 0;  // U_X / U_Y
    std::size_t single_qubit = 0;
    std::size_t dissipative = 0;  // resets, mixing, measurements

    bool operator==(const GateCounts &) const = default;
};

GateCounts count_gates(const Circuit &circ);

/// Product of all gate unitaries; throws if the circuit has dissipative elements.
Matrix circuit_unitary(const Circuit &circ);

/// A circuit with each run of coherent gates fused into one unitary, for
/// repeated application to many operators.
class CompiledCircuit {
   public:
    explicit CompiledCircuit(const Circuit &circ);

    std::size_t n_qubits() const { return n_qubits_; }

    /// Applies every element in order to an arbitrary operator (linear map).
    Matrix evolve(const Matrix &op) const;

   private:
    struct Segment {
        std::optional<Matrix> unitary;
        std::optional<GateOp> dissipative;
    };
    std::size_t n_qubits_;
    std::vector<Segment> segments_;
};

/// Applies every element in order to an arbitrary operator (linear map).
Matrix evolve_operator(const Circuit &circ, const Matrix &op);

DensityMatrix run_circuit(const Circuit &circ, const DensityMatrix &rho0);

}  // namespace openqs

#endif
