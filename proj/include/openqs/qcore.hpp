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

#ifndef OPENQS_QCORE_HPP
#define OPENQS_QCORE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace openqs {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised when a quantum-state or channel invariant is broken (trace,
/// Hermiticity, positivity, completeness). Distinct from argument errors so
/// front ends can map it to its own exit status.
class InvariantViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Tolerances for invariant checks and algebraic identities.
struct Tolerances {
    double invariant = 1e-9;
    double algebraic = 1e-12;
};

inline constexpr std::size_t kMaxQubits = 8;

/// Dimension 2^n for an n-qubit register.
std::size_t dim_of(std::size_t n_qubits);

/// Number of qubits for a power-of-two dimension; throws otherwise.
std::size_t qubits_of(std::size_t dim);

/// Pure state on n qubits. Qubit 0 is the most significant tensor factor.
class PureState {
   public:
    PureState(std::size_t n_qubits, Vector amplitudes, Tolerances tol = {});

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector &amplitudes() const { return amplitudes_; }
    cplx operator[](std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

    /// |psi><psi|
    Matrix projector() const;

   private:
    std::size_t n_qubits_;
    Vector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace 2^n x 2^n matrix.
///
/// Every constructor validates the three invariants and throws
/// InvariantViolation on failure, so a live DensityMatrix is always physical
/// (to the tolerance it was built with).
class DensityMatrix {
   public:
    DensityMatrix(std::size_t n_qubits, Matrix data, Tolerances tol = {});
    explicit DensityMatrix(const PureState &psi, Tolerances tol = {});

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(data_.rows()); }
    const Matrix &data() const { return data_; }
    cplx operator()(std::size_t row, std::size_t col) const {
        return data_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    /// Population of computational basis state `index`.
    double population(std::size_t index) const;

   private:
    std::size_t n_qubits_;
    Matrix data_;
};

/// Reasons a matrix fails to be a density matrix; empty string when valid.
std::string density_matrix_defect(const Matrix &m, Tolerances tol = {});

enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

/// 2x2 matrix of a single Pauli letter.
Matrix pauli_matrix(Pauli p);

/// Signed tensor product of Pauli letters, e.g. "+XXXX" or "-ZIIZ" on n qubits.
class PauliString {
   public:
    PauliString(std::vector<Pauli> factors, int sign = +1);

    /// Parses a dense label: optional sign then one letter per qubit ("-IXYZ").
    static PauliString parse(std::string_view label);

    /// Product of `letter` on each listed qubit, identity elsewhere.
    static PauliString on(std::size_t n_qubits, Pauli letter, std::span<const std::size_t> qubits);
    static PauliString on(std::size_t n_qubits, Pauli letter, std::initializer_list<std::size_t> qubits);

    std::size_t n_qubits() const { return factors_.size(); }
    int sign() const { return sign_; }
    Pauli factor(std::size_t q) const { return factors_.at(q); }
    const std::vector<Pauli> &factors() const { return factors_; }

    bool commutes_with(const PauliString &other) const;
    PauliString negated() const { return PauliString(factors_, -sign_); }

    /// Embeds the string into a larger register, placing qubit k at k + offset.
    PauliString embedded(std::size_t n_qubits, std::size_t offset) const;

    Matrix matrix() const;
    std::string label() const;

    bool operator==(const PauliString &other) const = default;

   private:
    std::vector<Pauli> factors_;
    int sign_;
};

/// Projector onto the eigen_sign eigenspace of a Pauli string: (1 + eigen_sign*S)/2.
class Projector {
   public:
    Projector(PauliString base, int eigen_sign);

    const PauliString &base() const { return base_; }
    int eigen_sign() const { return eigen_sign_; }
    Matrix matrix() const;

   private:
    PauliString base_;
    int eigen_sign_;
};

PureState basis_state(std::string_view label);
DensityMatrix fully_mixed(std::size_t n_qubits);

/// Kronecker product; a's qubits lead.
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state on `keep` (ascending original order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::size_t> keep);

/// Raw partial trace on an arbitrary operator (no physicality checks).
Matrix partial_trace_operator(const Matrix &op, std::size_t n_qubits, std::span<const std::size_t> keep);

double expectation(const DensityMatrix &rho, const PauliString &obs, Tolerances tol = {});

/// <psi|rho|psi>, the Jozsa fidelity for a pure target.
double fidelity(const DensityMatrix &rho, const PureState &target, Tolerances tol = {});

enum class Bell : std::size_t { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

PureState bell_state(Bell which);
std::string_view bell_name(Bell which);

/// Populations of (Phi+, Phi-, Psi+, Psi-).
std::array<double, 4> bell_populations(const DensityMatrix &rho);

/// Equal-weight superposition (|a> + sign |b>)/sqrt(2) of two basis labels.
PureState cat_state(std::string_view a, std::string_view b, int sign = +1);

/// Half the trace norm of a - b.
double trace_distance(const Matrix &a, const Matrix &b);

}  // namespace openqs

#endif
