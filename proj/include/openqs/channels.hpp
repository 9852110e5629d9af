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

#ifndef OPENQS_CHANNELS_HPP
#define OPENQS_CHANNELS_HPP

#include <vector>

#include "openqs/circuit.hpp"
#include "openqs/qcore.hpp"

namespace openqs {

/// CPTP map rho -> sum_k E_k rho E_k^dag. Completeness sum_k E_k^dag E_k = 1
/// is checked on construction.
class KrausChannel {
   public:
    KrausChannel(std::size_t n_qubits, std::vector<Matrix> ops, Tolerances tol = {});

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return dim_of(n_qubits_); }
    const std::vector<Matrix> &ops() const { return ops_; }

    /// max |sum_k E_k^dag E_k - 1|
    double completeness_error() const;

   private:
    std::size_t n_qubits_;
    std::vector<Matrix> ops_;
};

KrausChannel identity_channel(std::size_t n_qubits);
KrausChannel unitary_channel(const Matrix &u);

/// rho -> Tr(rho) |psi><psi|
KrausChannel replacement_channel(const PureState &target);

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho);

/// Linear action on an arbitrary operator.
Matrix apply_channel_operator(const KrausChannel &ch, const Matrix &op);

/// Heisenberg-picture action sum_k E_k^dag O E_k.
Matrix adjoint_action(const KrausChannel &ch, const Matrix &observable);

/// Two-element pumping channel into the target_sign eigenspace of S:
///   E1 = sqrt(p) flip (1 - target_sign S)/2
///   E2 = (1 + target_sign S)/2 + sqrt(1-p) (1 - target_sign S)/2
/// `flip` must anticommute with S so it carries the complement onto the target.
KrausChannel stabilizer_pump(const PauliString &stabilizer, int target_sign, double p, const PauliString &flip);

/// `then` after `first`; returned in canonical (Choi eigenvector) form.
KrausChannel compose(const KrausChannel &first, const KrausChannel &then);

/// Unnormalized Choi matrix sum_ij |i><j| (x) E(|i><j|), input factor first.
Matrix choi_matrix(const KrausChannel &ch);

/// Kraus form from a Choi matrix; eigenvalues below `cutoff` are dropped.
KrausChannel channel_from_choi(const Matrix &choi, double cutoff = 1e-12);

/// Re-expresses a channel with the minimal number of orthogonal Kraus operators.
KrausChannel canonicalize(const KrausChannel &ch);

/// System channel induced by running `circ` on ancilla_prep (x) rho and tracing
/// out the ancilla (qubit 0).
KrausChannel channel_from_circuit(const Circuit &circ, const PureState &ancilla_prep);

/// Process fidelity Tr sqrt(sqrt(A) B sqrt(A)) between the normalized Choi states.
double jamiolkowski_fidelity(const KrausChannel &a, const KrausChannel &b);

/// Generator of Markovian dynamics: H_S plus jump operators c_k.
struct LindbladModel {
    Matrix hamiltonian;
    std::vector<Matrix> jump_ops;

    LindbladModel(Matrix hamiltonian, std::vector<Matrix> jump_ops, Tolerances tol = {});
    std::size_t dim() const { return static_cast<std::size_t>(hamiltonian.rows()); }
};

/// Jump operator sqrt(gamma) flip (1 - target_sign S)/2 whose small-step limit
/// matches stabilizer_pump with p = gamma * dt.
Matrix pump_jump_operator(const PauliString &stabilizer, int target_sign, const PauliString &flip,
                          double gamma = 1.0);

Matrix lindblad_rhs(const LindbladModel &model, const Matrix &rho);

/// Classical fixed-step RK4; rho is re-symmetrized after every step and the
/// result must satisfy the density-matrix invariants to 1e-6.
DensityMatrix integrate_master_equation(const LindbladModel &model, const DensityMatrix &rho0, double total_time,
                                        double dt);

/// chi representation E(rho) = sum_mn chi_mn B_m rho B_n^dag in an orthogonal
/// operator basis.
struct ProcessMatrix {
    std::vector<Matrix> basis;
    Matrix chi;

    /// The map rebuilt from chi.
    Matrix apply(const Matrix &rho) const;
};

/// Unnormalized Pauli operators on n qubits in lexicographic (I,X,Y,Z) order.
std::vector<Matrix> pauli_operator_basis(std::size_t n_qubits);

/// The 16 operators |B_i><B_j| over (Phi+, Phi-, Psi+, Psi-), row-major in (i, j).
std::vector<Matrix> bell_operator_basis();

ProcessMatrix chi_matrix(const KrausChannel &ch, const std::vector<Matrix> &basis);

}  // namespace openqs

#endif
