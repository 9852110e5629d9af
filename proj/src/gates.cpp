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

#include "openqs/gates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace openqs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_participants(const std::vector<std::size_t> &qubits, std::size_t n, const char *what) {
    std::vector<std::size_t> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string(what) + ": duplicate qubit index");
    }
    for (std::size_t q : sorted) {
        if (q >= n) {
            throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) + " out of range for " +
                                        std::to_string(n) + " qubits");
        }
    }
}

void check_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("gate angle must be finite");
    }
}

// Single-qubit operator `m` on qubit q of an n-qubit register.
Matrix embed_single(const Matrix &m, std::size_t q, std::size_t n) {
    auto d = static_cast<Eigen::Index>(dim_of(n));
    Matrix out = Matrix::Zero(d, d);
    std::size_t shift = n - 1 - q;
    for (Eigen::Index r = 0; r < d; ++r) {
        auto rb = static_cast<Eigen::Index>((static_cast<std::size_t>(r) >> shift) & 1U);
        for (Eigen::Index cb = 0; cb < 2; ++cb) {
            cplx v = m(rb, cb);
            if (v == cplx{0.0, 0.0}) {
                continue;
            }
            auto c = static_cast<Eigen::Index>((static_cast<std::size_t>(r) & ~(std::size_t{1} << shift)) |
                                               (static_cast<std::size_t>(cb) << shift));
            out(r, c) = v;
        }
    }
    return out;
}

Matrix collective_sum(Axis axis, const std::vector<std::size_t> &participants, std::size_t n) {
    auto d = static_cast<Eigen::Index>(dim_of(n));
    Matrix p = pauli_matrix(axis == Axis::X ? Pauli::X : Pauli::Y);
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t q : participants) {
        sum += embed_single(p, q, n);
    }
    return sum;
}

std::string axis_name(Axis a) { return a == Axis::X ? "X" : "Y"; }

std::string join(const std::vector<std::size_t> &qs) {
    std::string out;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        out += (i ? "," : "") + std::to_string(qs[i]);
    }
    return out;
}

}  // namespace

GateOp::GateOp(Kind kind) : kind_(std::move(kind)) {
    std::visit(overloaded{
                   [](const CollectiveRot &g) { check_angle(g.theta); },
                   [](const SingleZ &g) { check_angle(g.theta); },
                   [](const MS &g) { check_angle(g.theta); },
                   [](const SystemMix &g) {
                       if (g.qubits.empty()) {
                           throw std::invalid_argument("SystemMix needs at least one qubit");
                       }
                   },
                   [](const auto &) {},
               },
               kind_);
}

bool GateOp::is_coherent() const {
    return std::holds_alternative<CollectiveRot>(kind_) || std::holds_alternative<SingleZ>(kind_) ||
           std::holds_alternative<MS>(kind_);
}

std::vector<std::size_t> GateOp::participants(std::size_t n) const {
    auto all_if_empty = [n](const std::vector<std::size_t> &qs) {
        if (!qs.empty()) {
            return qs;
        }
        std::vector<std::size_t> all(n);
        for (std::size_t q = 0; q < n; ++q) {
            all[q] = q;
        }
        return all;
    };
    return std::visit(overloaded{
                          [&](const CollectiveRot &g) { return all_if_empty(g.participants); },
                          [&](const MS &g) { return all_if_empty(g.participants); },
                          [](const SingleZ &g) { return std::vector<std::size_t>{g.target}; },
                          [](const SystemMix &g) { return g.qubits; },
                          [](const auto &) { return std::vector<std::size_t>{0}; },
                      },
                      kind_);
}

void GateOp::validate(std::size_t n) const {
    std::visit(overloaded{
                   [n](const CollectiveRot &g) { check_participants(g.participants, n, "collective rotation"); },
                   [n](const MS &g) { check_participants(g.participants, n, "MS gate"); },
                   [n](const SingleZ &g) { check_participants({g.target}, n, "single-qubit rotation"); },
                   [n](const SystemMix &g) { check_participants(g.qubits, n, "system mix"); },
                   [](const auto &) {},
               },
               kind_);
}

std::string GateOp::describe() const {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const CollectiveRot &g) {
                       out << "U_" << axis_name(g.axis) << "(" << g.theta << ")";
                       if (!g.participants.empty()) {
                           out << "[" << join(g.participants) << "]";
                       }
                   },
                   [&](const MS &g) {
                       out << "U_" << axis_name(g.axis) << "^2(" << g.theta << ")";
                       if (!g.participants.empty()) {
                           out << "[" << join(g.participants) << "]";
                       }
                   },
                   [&](const SingleZ &g) { out << "U_Z" << g.target << "(" << g.theta << ")"; },
                   [&](const AncillaReset &) { out << "reset(0)"; },
                   [&](const SystemMix &g) { out << "mix(" << join(g.qubits) << ")"; },
                   [&](const AncillaMeasure &) { out << "measure(0)"; },
               },
               kind_);
    return out.str();
}

GateOp GateOp::inverse() const {
    return std::visit(overloaded{
                          [](const CollectiveRot &g) -> GateOp { return CollectiveRot{g.axis, -g.theta, g.participants}; },
                          [](const MS &g) -> GateOp { return MS{g.axis, -g.theta, g.participants}; },
                          [](const SingleZ &g) -> GateOp { return SingleZ{g.target, -g.theta}; },
                          [](const auto &) -> GateOp {
                              throw std::invalid_argument("dissipative operations have no inverse");
                          },
                      },
                      kind_);
}

Matrix hermitian_exp(const Matrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const auto &vals = solver.eigenvalues();
    Vector phases(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        phases(i) = std::exp(cplx{0.0, -t * vals(i)});
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix unitary_of(const GateOp &gate, std::size_t n) {
    gate.validate(n);
    return std::visit(overloaded{
                          [&](const CollectiveRot &g) -> Matrix {
                              Matrix s = collective_sum(g.axis, gate.participants(n), n);
                              return hermitian_exp(s, g.theta / 2.0);
                          },
                          [&](const MS &g) -> Matrix {
                              Matrix s = collective_sum(g.axis, gate.participants(n), n);
                              return hermitian_exp(s * s, g.theta / 4.0);
                          },
                          [&](const SingleZ &g) -> Matrix {
                              return hermitian_exp(embed_single(pauli_matrix(Pauli::Z), g.target, n), g.theta / 2.0);
                          },
                          [](const auto &) -> Matrix {
                              throw std::invalid_argument("unitary_of: dissipative operation has no unitary");
                          },
                      },
                      gate.kind());
}

Matrix partial_ms(Axis axis, double theta, std::size_t a, std::size_t b, std::size_t n) {
    if (a == b) {
        throw std::invalid_argument("partial_ms needs two distinct qubits");
    }
    check_participants({a, b}, n, "partial_ms");
    check_angle(theta);
    Matrix p = pauli_matrix(axis == Axis::X ? Pauli::X : Pauli::Y);
    Matrix pp = embed_single(p, a, n) * embed_single(p, b, n);
    return hermitian_exp(pp, theta / 2.0);
}

namespace {

Matrix reset_operator(const Matrix &op, std::size_t n) {
    // |1><1| (x) Tr_0(op)
    std::size_t half = dim_of(n) / 2;
    auto h = static_cast<Eigen::Index>(half);
    Matrix reduced = op.topLeftCorner(h, h) + op.bottomRightCorner(h, h);
    Matrix out = Matrix::Zero(op.rows(), op.cols());
    out.bottomRightCorner(h, h) = reduced;
    return out;
}

Matrix measure_operator(const Matrix &op, std::size_t n) {
    auto h = static_cast<Eigen::Index>(dim_of(n) / 2);
    Matrix out = op;
    out.topRightCorner(h, h).setZero();
    out.bottomLeftCorner(h, h).setZero();
    return out;
}

Matrix mix_operator(const Matrix &op, const std::vector<std::size_t> &qubits, std::size_t n) {
    // Full depolarization of each listed qubit: average over its four Paulis.
    Matrix cur = op;
    for (std::size_t q : qubits) {
        Matrix acc = Matrix::Zero(op.rows(), op.cols());
        for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
            Matrix e = embed_single(pauli_matrix(p), q, n);
            acc += e * cur * e.adjoint();
        }
        cur = acc * 0.25;
    }
    return cur;
}

}  // namespace

Matrix apply_gate_operator(const GateOp &gate, const Matrix &op, std::size_t n) {
    gate.validate(n);
    if (static_cast<std::size_t>(op.rows()) != dim_of(n) || op.rows() != op.cols()) {
        throw std::invalid_argument("apply_gate: operator dimension does not match register");
    }
    if (gate.is_coherent()) {
        Matrix u = unitary_of(gate, n);
        return u * op * u.adjoint();
    }
    return std::visit(overloaded{
                          [&](const AncillaReset &) { return reset_operator(op, n); },
                          [&](const AncillaMeasure &) { return measure_operator(op, n); },
                          [&](const SystemMix &g) { return mix_operator(op, g.qubits, n); },
                          [&](const auto &) -> Matrix { throw std::logic_error("unreachable"); },
                      },
                      gate.kind());
}

DensityMatrix apply_gate(const GateOp &gate, const DensityMatrix &rho) {
    return DensityMatrix(rho.n_qubits(), apply_gate_operator(gate, rho.data(), rho.n_qubits()));
}

double phase_distance(const Matrix &u, const Matrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("phase_distance: shape mismatch");
    }
    Matrix w = u.adjoint() * v;
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    w.diagonal().cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(w(r, r)) < 1e-300) {
        return std::numeric_limits<double>::infinity();
    }
    cplx phase = w(r, r) / std::abs(w(r, r));
    return (w - phase * Matrix::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
}

}  // namespace openqs
