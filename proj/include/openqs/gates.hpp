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

#ifndef OPENQS_GATES_HPP
#define OPENQS_GATES_HPP

#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "openqs/qcore.hpp"

namespace openqs {

enum class Axis : unsigned char { X, Y };

/// exp(-i theta/2 sum_i P_i) over the participants (P = X or Y).
struct CollectiveRot {
    Axis axis = Axis::X;
    double theta = 0.0;
    std::vector<std::size_t> participants;  // empty = every qubit
};

/// exp(-i theta/2 Z_target), a focused light-shift pulse.
struct SingleZ {
    std::size_t target = 0;
    double theta = 0.0;
};

/// Molmer-Sorensen gate exp(-i theta/4 (sum_i P_i)^2) over the participants.
struct MS {
    Axis axis = Axis::X;
    double theta = 0.0;
    std::vector<std::size_t> participants;  // empty = every qubit
};

/// Dissipative reinitialization of the ancilla (qubit 0) into |1>.
struct AncillaReset {};

/// Replaces the reduced state of the listed qubits by the fully mixed state.
struct SystemMix {
    std::vector<std::size_t> qubits;
};

/// Non-selective computational-basis measurement of the ancilla (dephasing).
struct AncillaMeasure {};

class GateOp {
   public:
    using Kind = std::variant<CollectiveRot, SingleZ, MS, AncillaReset, SystemMix, AncillaMeasure>;

    GateOp(Kind kind);  // NOLINT(google-explicit-constructor)

    template <class T>
        requires std::is_constructible_v<Kind, T> && (!std::is_same_v<std::decay_t<T>, Kind>) &&
                 (!std::is_same_v<std::decay_t<T>, GateOp>)
    GateOp(T &&alternative)  // NOLINT(google-explicit-constructor)
        : GateOp(Kind(std::forward<T>(alternative))) {}

    static GateOp rot(Axis axis, double theta) { return CollectiveRot{axis, theta, {}}; }
    static GateOp z(std::size_t target, double theta) { return SingleZ{target, theta}; }
    static GateOp ms(Axis axis, double theta, std::vector<std::size_t> participants = {}) {
        return MS{axis, theta, std::move(participants)};
    }
    static GateOp reset() { return AncillaReset{}; }
    static GateOp mix(std::vector<std::size_t> qubits) { return SystemMix{std::move(qubits)}; }
    static GateOp measure_ancilla() { return AncillaMeasure{}; }

    const Kind &kind() const { return kind_; }
    bool is_coherent() const;

    /// Throws std::invalid_argument when the gate does not fit an n-qubit register.
    void validate(std::size_t n_qubits) const;

    /// Participant list with the "all qubits" default expanded.
    std::vector<std::size_t> participants(std::size_t n_qubits) const;

    std::string describe() const;

    /// The inverse of a coherent gate (negated angle).
    GateOp inverse() const;

   private:
    Kind kind_;
};

/// exp(-i t H) for Hermitian H by spectral decomposition.
Matrix hermitian_exp(const Matrix &h, double t);

Matrix unitary_of(const GateOp &gate, std::size_t n_qubits);

/// exp(-i theta/2 P_a P_b) on a qubit pair, identity elsewhere.
Matrix partial_ms(Axis axis, double theta, std::size_t a, std::size_t b, std::size_t n_qubits);

/// Linear action of a gate on an arbitrary 2^n x 2^n operator.
Matrix apply_gate_operator(const GateOp &gate, const Matrix &op, std::size_t n_qubits);

DensityMatrix apply_gate(const GateOp &gate, const DensityMatrix &rho);

/// Max deviation of U^dag V from e^{i phi} I, with phi chosen from the largest entry.
double phase_distance(const Matrix &u, const Matrix &v);

}  // namespace openqs

#endif
