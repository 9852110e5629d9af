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

#include "openqs/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace openqs {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Bit of qubit q inside a basis index of an n-qubit register.
inline std::size_t bit_of(std::size_t index, std::size_t q, std::size_t n) {
    return (index >> (n - 1 - q)) & 1U;
}

}  // namespace

std::size_t dim_of(std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubits));
    }
    return std::size_t{1} << n_qubits;
}

std::size_t qubits_of(std::size_t dim) {
    for (std::size_t n = 1; n <= kMaxQubits; ++n) {
        if (dim == (std::size_t{1} << n)) {
            return n;
        }
    }
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a supported power of two");
}

// ---------------------------------------------------------------- PureState

PureState::PureState(std::size_t n_qubits, Vector amplitudes, Tolerances tol)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != dim_of(n_qubits_)) {
        throw std::invalid_argument("amplitude vector length does not match 2^n");
    }
    double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > tol.invariant) {
        throw InvariantViolation("pure state is not normalized (norm " + std::to_string(norm) + ")");
    }
}

Matrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

// ------------------------------------------------------------ DensityMatrix

std::string density_matrix_defect(const Matrix &m, Tolerances tol) {
    if (m.rows() != m.cols()) {
        return "matrix is not square";
    }
    cplx tr = m.trace();
    if (std::abs(tr - cplx{1.0, 0.0}) > tol.invariant) {
        std::ostringstream out;
        out << "trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i, expected 1";
        return out.str();
    }
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.invariant) {
        return "matrix is not Hermitian (max |rho - rho^dag| = " + std::to_string(herm) + ")";
    }
    Matrix sym = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    double smallest = solver.eigenvalues().minCoeff();
    if (smallest < -tol.invariant) {
        return "matrix is not positive semidefinite (smallest eigenvalue " + std::to_string(smallest) + ")";
    }
    return {};
}

DensityMatrix::DensityMatrix(std::size_t n_qubits, Matrix data, Tolerances tol)
    : n_qubits_(n_qubits), data_(std::move(data)) {
    std::size_t d = dim_of(n_qubits_);
    if (static_cast<std::size_t>(data_.rows()) != d || static_cast<std::size_t>(data_.cols()) != d) {
        throw std::invalid_argument("density matrix shape does not match 2^n x 2^n");
    }
    if (std::string defect = density_matrix_defect(data_, tol); !defect.empty()) {
        throw InvariantViolation("invalid density matrix: " + defect);
    }
}

DensityMatrix::DensityMatrix(const PureState &psi, Tolerances tol)
    : DensityMatrix(psi.n_qubits(), psi.projector(), tol) {}

double DensityMatrix::population(std::size_t index) const {
    return data_(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)).real();
}

// ------------------------------------------------------------------- Pauli

Matrix pauli_matrix(Pauli p) {
    Matrix m(2, 2);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, cplx{0, -1}, cplx{0, 1}, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

PauliString::PauliString(std::vector<Pauli> factors, int sign) : factors_(std::move(factors)), sign_(sign) {
    if (factors_.empty()) {
        throw std::invalid_argument("Pauli string needs at least one qubit");
    }
    dim_of(factors_.size());
    if (sign_ != 1 && sign_ != -1) {
        throw std::invalid_argument("Pauli string sign must be +1 or -1");
    }
}

PauliString PauliString::parse(std::string_view label) {
    int sign = 1;
    if (!label.empty() && (label.front() == '+' || label.front() == '-')) {
        sign = label.front() == '-' ? -1 : 1;
        label.remove_prefix(1);
    }
    std::vector<Pauli> factors;
    for (char c : label) {
        switch (c) {
            case 'I':
                factors.push_back(Pauli::I);
                break;
            case 'X':
                factors.push_back(Pauli::X);
                break;
            case 'Y':
                factors.push_back(Pauli::Y);
                break;
            case 'Z':
                factors.push_back(Pauli::Z);
                break;
            default:
                throw std::invalid_argument("invalid Pauli letter '" + std::string(1, c) + "'");
        }
    }
    return PauliString(std::move(factors), sign);
}

PauliString PauliString::on(std::size_t n_qubits, Pauli letter, std::span<const std::size_t> qubits) {
    std::vector<Pauli> factors(n_qubits, Pauli::I);
    for (std::size_t q : qubits) {
        if (q >= n_qubits) {
            throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
        }
        factors[q] = letter;
    }
    return PauliString(std::move(factors));
}

PauliString PauliString::on(std::size_t n_qubits, Pauli letter, std::initializer_list<std::size_t> qubits) {
    return on(n_qubits, letter, std::span<const std::size_t>(qubits.begin(), qubits.size()));
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (other.n_qubits() != n_qubits()) {
        throw std::invalid_argument("Pauli strings act on different qubit counts");
    }
    std::size_t anti = 0;
    for (std::size_t q = 0; q < factors_.size(); ++q) {
        Pauli a = factors_[q];
        Pauli b = other.factors_[q];
        if (a != Pauli::I && b != Pauli::I && a != b) {
            ++anti;
        }
    }
    return anti % 2 == 0;
}

PauliString PauliString::embedded(std::size_t n_qubits, std::size_t offset) const {
    if (offset + factors_.size() > n_qubits) {
        throw std::invalid_argument("embedding exceeds register size");
    }
    std::vector<Pauli> factors(n_qubits, Pauli::I);
    std::copy(factors_.begin(), factors_.end(), factors.begin() + static_cast<std::ptrdiff_t>(offset));
    return PauliString(std::move(factors), sign_);
}

Matrix PauliString::matrix() const {
    Matrix m = Matrix::Identity(1, 1) * static_cast<double>(sign_);
    for (Pauli p : factors_) {
        Matrix next = Eigen::kroneckerProduct(m, pauli_matrix(p));
        m = std::move(next);
    }
    return m;
}

std::string PauliString::label() const {
    std::string out = sign_ < 0 ? "-" : "";
    for (Pauli p : factors_) {
        out += "IXYZ"[static_cast<int>(p)];
    }
    return out;
}

Projector::Projector(PauliString base, int eigen_sign) : base_(std::move(base)), eigen_sign_(eigen_sign) {
    if (eigen_sign_ != 1 && eigen_sign_ != -1) {
        throw std::invalid_argument("projector eigen_sign must be +1 or -1");
    }
}

Matrix Projector::matrix() const {
    Matrix s = base_.matrix();
    return (Matrix::Identity(s.rows(), s.cols()) + static_cast<double>(eigen_sign_) * s) * 0.5;
}

// ---------------------------------------------------------------- states

PureState basis_state(std::string_view label) {
    if (label.empty()) {
        throw std::invalid_argument("basis state label is empty");
    }
    std::size_t n = label.size();
    std::size_t index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("basis state label must contain only 0 and 1");
        }
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(n, std::move(amps));
}

DensityMatrix fully_mixed(std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("fully_mixed needs at least one qubit");
    }
    auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return DensityMatrix(n_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    Matrix joint = Eigen::kroneckerProduct(a.data(), b.data());
    return DensityMatrix(a.n_qubits() + b.n_qubits(), std::move(joint));
}

Matrix partial_trace_operator(const Matrix &op, std::size_t n, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace needs a nonempty keep set");
    }
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw std::invalid_argument("partial trace keep set has duplicates");
    }
    if (kept.back() >= n) {
        throw std::invalid_argument("partial trace keep index " + std::to_string(kept.back()) + " out of range");
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    std::size_t nk = kept.size();
    std::size_t dk = std::size_t{1} << nk;
    std::size_t dt = std::size_t{1} << traced.size();

    // Full index from (kept bits, traced bits).
    auto compose = [&](std::size_t k, std::size_t t) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < nk; ++i) {
            idx |= bit_of(k, i, nk) << (n - 1 - kept[i]);
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
            idx |= bit_of(t, i, traced.size()) << (n - 1 - traced[i]);
        }
        return static_cast<Eigen::Index>(idx);
    };

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                acc += op(compose(r, t), compose(c, t));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    Matrix reduced = partial_trace_operator(rho.data(), rho.n_qubits(), keep);
    return DensityMatrix(keep.size(), std::move(reduced));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

double expectation(const DensityMatrix &rho, const PauliString &obs, Tolerances tol) {
    if (obs.n_qubits() != rho.n_qubits()) {
        throw std::invalid_argument("observable acts on " + std::to_string(obs.n_qubits()) + " qubits, state has " +
                                    std::to_string(rho.n_qubits()));
    }
    cplx value = (rho.data() * obs.matrix()).trace();
    if (std::abs(value.imag()) > tol.invariant) {
        throw InvariantViolation("expectation has imaginary part " + std::to_string(value.imag()));
    }
    return value.real();
}

double fidelity(const DensityMatrix &rho, const PureState &target, Tolerances tol) {
    if (target.dim() != rho.dim()) {
        throw std::invalid_argument("fidelity: state dimensions differ");
    }
    cplx value = target.amplitudes().dot(rho.data() * target.amplitudes());
    if (std::abs(value.imag()) > tol.invariant) {
        throw InvariantViolation("fidelity has imaginary part " + std::to_string(value.imag()));
    }
    return std::clamp(value.real(), 0.0, 1.0);
}

PureState bell_state(Bell which) {
    Vector v = Vector::Zero(4);
    switch (which) {
        case Bell::PhiPlus:
            v << kInvSqrt2, 0, 0, kInvSqrt2;
            break;
        case Bell::PhiMinus:
            v << kInvSqrt2, 0, 0, -kInvSqrt2;
            break;
        case Bell::PsiPlus:
            v << 0, kInvSqrt2, kInvSqrt2, 0;
            break;
        case Bell::PsiMinus:
            v << 0, kInvSqrt2, -kInvSqrt2, 0;
            break;
    }
    return PureState(2, std::move(v));
}

std::string_view bell_name(Bell which) {
    switch (which) {
        case Bell::PhiPlus:
            return "Phi+";
        case Bell::PhiMinus:
            return "Phi-";
        case Bell::PsiPlus:
            return "Psi+";
        case Bell::PsiMinus:
            return "Psi-";
    }
    return "?";
}

std::array<double, 4> bell_populations(const DensityMatrix &rho) {
    if (rho.n_qubits() != 2) {
        throw std::invalid_argument("bell_populations needs a two-qubit state");
    }
    std::array<double, 4> pops{};
    for (std::size_t k = 0; k < 4; ++k) {
        pops[k] = fidelity(rho, bell_state(static_cast<Bell>(k)));
    }
    return pops;
}

PureState cat_state(std::string_view a, std::string_view b, int sign) {
    if (a.size() != b.size() || a == b) {
        throw std::invalid_argument("cat_state needs two distinct labels of equal length");
    }
    Vector v = (basis_state(a).amplitudes() + static_cast<double>(sign) * basis_state(b).amplitudes()) * kInvSqrt2;
    return PureState(a.size(), std::move(v));
}

double trace_distance(const Matrix &a, const Matrix &b) {
    Matrix diff = a - b;
    Matrix herm = (diff + diff.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace openqs
