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

#include "openqs/channels.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace openqs {

// ------------------------------------------------------------ KrausChannel

KrausChannel::KrausChannel(std::size_t n_qubits, std::vector<Matrix> ops, Tolerances tol)
    : n_qubits_(n_qubits), ops_(std::move(ops)) {
    auto d = static_cast<Eigen::Index>(dim_of(n_qubits_));
    if (ops_.empty()) {
        throw std::invalid_argument("Kraus channel needs at least one operation element");
    }
    for (const Matrix &e : ops_) {
        if (e.rows() != d || e.cols() != d) {
            throw std::invalid_argument("Kraus operator shape does not match 2^n x 2^n");
        }
    }
    if (double err = completeness_error(); err > tol.invariant) {
        throw InvariantViolation("Kraus completeness violated by " + std::to_string(err));
    }
}

double KrausChannel::completeness_error() const {
    auto d = static_cast<Eigen::Index>(dim());
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix &e : ops_) {
        sum += e.adjoint() * e;
    }
    return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

KrausChannel identity_channel(std::size_t n_qubits) {
    auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return KrausChannel(n_qubits, {Matrix::Identity(d, d)});
}

KrausChannel unitary_channel(const Matrix &u) {
    return KrausChannel(qubits_of(static_cast<std::size_t>(u.rows())), {u});
}

KrausChannel replacement_channel(const PureState &target) {
    // K_j = |psi><j|
    auto d = static_cast<Eigen::Index>(target.dim());
    std::vector<Matrix> ops;
    for (Eigen::Index j = 0; j < d; ++j) {
        Matrix k = Matrix::Zero(d, d);
        k.col(j) = target.amplitudes();
        ops.push_back(std::move(k));
    }
    return KrausChannel(target.n_qubits(), std::move(ops));
}

Matrix apply_channel_operator(const KrausChannel &ch, const Matrix &op) {
    if (static_cast<std::size_t>(op.rows()) != ch.dim() || op.rows() != op.cols()) {
        throw std::invalid_argument("channel and operator dimensions differ");
    }
    Matrix out = Matrix::Zero(op.rows(), op.cols());
    for (const Matrix &e : ch.ops()) {
        out += e * op * e.adjoint();
    }
    return out;
}

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho) {
    if (rho.n_qubits() != ch.n_qubits()) {
        throw std::invalid_argument("apply_channel: channel acts on " + std::to_string(ch.n_qubits()) +
                                    " qubits, state has " + std::to_string(rho.n_qubits()));
    }
    if (double err = ch.completeness_error(); err > Tolerances{}.invariant) {
        throw InvariantViolation("apply_channel: completeness violated by " + std::to_string(err));
    }
    return DensityMatrix(rho.n_qubits(), apply_channel_operator(ch, rho.data()));
}

Matrix adjoint_action(const KrausChannel &ch, const Matrix &observable) {
    if (static_cast<std::size_t>(observable.rows()) != ch.dim()) {
        throw std::invalid_argument("adjoint_action: dimension mismatch");
    }
    Matrix out = Matrix::Zero(observable.rows(), observable.cols());
    for (const Matrix &e : ch.ops()) {
        out += e.adjoint() * observable * e;
    }
    return out;
}

KrausChannel stabilizer_pump(const PauliString &stabilizer, int target_sign, double p, const PauliString &flip) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("pumping probability must lie in [0, 1]");
    }
    if (target_sign != 1 && target_sign != -1) {
        throw std::invalid_argument("target_sign must be +1 or -1");
    }
    if (flip.n_qubits() != stabilizer.n_qubits()) {
        throw std::invalid_argument("flip and stabilizer act on different registers");
    }
    if (flip.commutes_with(stabilizer)) {
        throw std::invalid_argument("flip " + flip.label() + " commutes with " + stabilizer.label() +
                                    "; it cannot pump between eigenspaces");
    }
    Matrix target = Projector(stabilizer, target_sign).matrix();
    Matrix other = Projector(stabilizer, -target_sign).matrix();
    Matrix e1 = std::sqrt(p) * flip.matrix() * other;
    Matrix e2 = target + std::sqrt(1.0 - p) * other;
    return KrausChannel(stabilizer.n_qubits(), {std::move(e1), std::move(e2)});
}

Matrix choi_matrix(const KrausChannel &ch) {
    // |v_K> = sum_i |i> (x) K|i>, so J = sum_K |v_K><v_K|.
    auto d = static_cast<Eigen::Index>(ch.dim());
    Matrix j = Matrix::Zero(d * d, d * d);
    Vector v(d * d);
    for (const Matrix &k : ch.ops()) {
        for (Eigen::Index i = 0; i < d; ++i) {
            v.segment(i * d, d) = k.col(i);
        }
        j.noalias() += v * v.adjoint();
    }
    return j;
}

KrausChannel channel_from_choi(const Matrix &choi, double cutoff) {
    auto dd = choi.rows();
    auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(dd))));
    if (d * d != dd || choi.cols() != dd) {
        throw std::invalid_argument("Choi matrix must be d^2 x d^2");
    }
    Matrix herm = (choi + choi.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("Choi eigendecomposition failed");
    }
    std::vector<Matrix> ops;
    for (Eigen::Index m = dd - 1; m >= 0; --m) {
        double lambda = solver.eigenvalues()(m);
        if (lambda < cutoff) {
            if (lambda < -1e-9) {
                throw InvariantViolation("Choi matrix is not positive semidefinite (eigenvalue " +
                                         std::to_string(lambda) + ")");
            }
            continue;
        }
        Vector v = solver.eigenvectors().col(m) * std::sqrt(lambda);
        Matrix k(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            k.col(i) = v.segment(i * d, d);
        }
        ops.push_back(std::move(k));
    }
    return KrausChannel(qubits_of(static_cast<std::size_t>(d)), std::move(ops));
}

KrausChannel canonicalize(const KrausChannel &ch) { return channel_from_choi(choi_matrix(ch)); }

KrausChannel compose(const KrausChannel &first, const KrausChannel &then) {
    if (first.n_qubits() != then.n_qubits()) {
        throw std::invalid_argument("compose: channels act on different registers");
    }
    std::vector<Matrix> products;
    products.reserve(first.ops().size() * then.ops().size());
    for (const Matrix &f : then.ops()) {
        for (const Matrix &e : first.ops()) {
            products.push_back(f * e);
        }
    }
    KrausChannel raw(first.n_qubits(), std::move(products));
    return canonicalize(raw);
}

KrausChannel channel_from_circuit(const Circuit &circ, const PureState &ancilla_prep) {
    if (ancilla_prep.n_qubits() != 1) {
        throw std::invalid_argument("ancilla preparation must be a single-qubit state");
    }
    if (circ.n_qubits() < 2) {
        throw std::invalid_argument("circuit needs an ancilla plus at least one system qubit");
    }
    for (const GateOp &g : circ.elements()) {
        if (std::holds_alternative<AncillaMeasure>(g.kind())) {
            throw std::invalid_argument("channel_from_circuit: circuit contains a measurement; use the QND path");
        }
    }
    const std::size_t n_sys = circ.n_qubits() - 1;
    auto d = static_cast<Eigen::Index>(dim_of(n_sys));
    Matrix anc = ancilla_prep.projector();
    std::vector<std::size_t> system(n_sys);
    for (std::size_t q = 0; q < n_sys; ++q) {
        system[q] = q + 1;
    }

    CompiledCircuit compiled(circ);
    Matrix choi = Matrix::Zero(d * d, d * d);
    Matrix unit = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            unit.setZero();
            unit(i, j) = 1.0;
            Matrix joint = Eigen::kroneckerProduct(anc, unit);
            Matrix out = partial_trace_operator(compiled.evolve(joint), circ.n_qubits(), system);
            choi.block(i * d, j * d, d, d) = out;
        }
    }
    return channel_from_choi(choi);
}

namespace {

// Square root of a PSD matrix with eigenvalues under `cutoff` treated as zero.
Matrix psd_sqrt(const Matrix &m, double cutoff) {
    Matrix herm = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    Eigen::VectorXd vals = solver.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        vals(i) = vals(i) > cutoff ? std::sqrt(vals(i)) : 0.0;
    }
    return solver.eigenvectors() * vals.cast<cplx>().asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double jamiolkowski_fidelity(const KrausChannel &a, const KrausChannel &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("jamiolkowski_fidelity: channels act on different registers");
    }
    const double d = static_cast<double>(a.dim());
    Matrix ja = choi_matrix(a) / d;
    Matrix jb = choi_matrix(b) / d;
    // Tr sqrt(sqrt(A) B sqrt(A)) equals the trace norm of sqrt(A) sqrt(B).
    Matrix prod = psd_sqrt(ja, 1e-12) * psd_sqrt(jb, 1e-12);
    Eigen::JacobiSVD<Matrix> svd(prod);
    return std::clamp(svd.singularValues().sum(), 0.0, 1.0);
}

// ---------------------------------------------------------------- Lindblad

LindbladModel::LindbladModel(Matrix h, std::vector<Matrix> jumps, Tolerances tol)
    : hamiltonian(std::move(h)), jump_ops(std::move(jumps)) {
    if (hamiltonian.rows() != hamiltonian.cols()) {
        throw std::invalid_argument("Hamiltonian must be square");
    }
    qubits_of(static_cast<std::size_t>(hamiltonian.rows()));
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > tol.invariant) {
        throw std::invalid_argument("Hamiltonian is not Hermitian");
    }
    for (const Matrix &c : jump_ops) {
        if (c.rows() != hamiltonian.rows() || c.cols() != hamiltonian.cols()) {
            throw std::invalid_argument("jump operator shape does not match the Hamiltonian");
        }
    }
}

Matrix pump_jump_operator(const PauliString &stabilizer, int target_sign, const PauliString &flip, double gamma) {
    if (flip.commutes_with(stabilizer)) {
        throw std::invalid_argument("flip commutes with the stabilizer");
    }
    if (gamma < 0.0) {
        throw std::invalid_argument("rate must be non-negative");
    }
    return std::sqrt(gamma) * flip.matrix() * Projector(stabilizer, -target_sign).matrix();
}

Matrix lindblad_rhs(const LindbladModel &model, const Matrix &rho) {
    if (rho.rows() != model.hamiltonian.rows() || rho.cols() != rho.rows()) {
        throw std::invalid_argument("lindblad_rhs: state dimension does not match the model");
    }
    const cplx i{0.0, 1.0};
    Matrix out = -i * (model.hamiltonian * rho - rho * model.hamiltonian);
    for (const Matrix &c : model.jump_ops) {
        Matrix cdc = c.adjoint() * c;
        out += c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
    }
    return out;
}

DensityMatrix integrate_master_equation(const LindbladModel &model, const DensityMatrix &rho0, double total_time,
                                        double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("time step must be positive");
    }
    if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
        throw std::invalid_argument("total time must be non-negative");
    }
    if (rho0.dim() != model.dim()) {
        throw std::invalid_argument("initial state dimension does not match the model");
    }
    auto steps = static_cast<long long>(std::ceil(total_time / dt - 1e-9));
    Matrix rho = rho0.data();
    if (steps > 0) {
        const double h = total_time / static_cast<double>(steps);
        for (long long s = 0; s < steps; ++s) {
            Matrix k1 = lindblad_rhs(model, rho);
            Matrix k2 = lindblad_rhs(model, rho + 0.5 * h * k1);
            Matrix k3 = lindblad_rhs(model, rho + 0.5 * h * k2);
            Matrix k4 = lindblad_rhs(model, rho + h * k3);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            rho = (rho + rho.adjoint()).eval() * 0.5;
            if (!rho.allFinite()) {
                throw InvariantViolation("master equation integration diverged; reduce dt");
            }
        }
    }
    Tolerances loose{1e-6, 1e-12};
    if (std::string defect = density_matrix_defect(rho, loose); !defect.empty()) {
        throw InvariantViolation("master equation integration left the state space (" + defect + "); reduce dt");
    }
    return DensityMatrix(rho0.n_qubits(), std::move(rho), loose);
}

// ----------------------------------------------------------- process matrix

Matrix ProcessMatrix::apply(const Matrix &rho) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (std::size_t m = 0; m < basis.size(); ++m) {
        for (std::size_t n = 0; n < basis.size(); ++n) {
            cplx c = chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
            if (c != cplx{0.0, 0.0}) {
                out += c * basis[m] * rho * basis[n].adjoint();
            }
        }
    }
    return out;
}

std::vector<Matrix> pauli_operator_basis(std::size_t n_qubits) {
    std::size_t count = std::size_t{1} << (2 * n_qubits);
    std::vector<Matrix> basis;
    basis.reserve(count);
    for (std::size_t code = 0; code < count; ++code) {
        std::vector<Pauli> factors(n_qubits);
        for (std::size_t q = 0; q < n_qubits; ++q) {
            factors[q] = static_cast<Pauli>((code >> (2 * (n_qubits - 1 - q))) & 3U);
        }
        basis.push_back(PauliString(std::move(factors)).matrix());
    }
    return basis;
}

std::vector<Matrix> bell_operator_basis() {
    std::vector<Matrix> basis;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            basis.push_back(bell_state(static_cast<Bell>(i)).amplitudes() *
                            bell_state(static_cast<Bell>(j)).amplitudes().adjoint());
        }
    }
    return basis;
}

ProcessMatrix chi_matrix(const KrausChannel &ch, const std::vector<Matrix> &basis) {
    auto d = static_cast<Eigen::Index>(ch.dim());
    const std::size_t m = basis.size();
    if (m != static_cast<std::size_t>(d * d)) {
        throw std::invalid_argument("operator basis is incomplete: need " + std::to_string(d * d) + " elements, got " +
                                    std::to_string(m));
    }
    std::vector<double> norms(m);
    for (std::size_t a = 0; a < m; ++a) {
        if (basis[a].rows() != d || basis[a].cols() != d) {
            throw std::invalid_argument("operator basis element has the wrong shape");
        }
        norms[a] = basis[a].squaredNorm();
        if (norms[a] < 1e-12) {
            throw std::invalid_argument("operator basis contains a zero element");
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            cplx overlap = (basis[a].adjoint() * basis[b]).trace();
            if (std::abs(overlap) > 1e-9 * std::sqrt(norms[a] * norms[b])) {
                throw std::invalid_argument("operator basis is not orthogonal under the Hilbert-Schmidt product");
            }
        }
    }
    auto mi = static_cast<Eigen::Index>(m);
    Matrix coeffs(static_cast<Eigen::Index>(ch.ops().size()), mi);
    for (std::size_t k = 0; k < ch.ops().size(); ++k) {
        for (std::size_t a = 0; a < m; ++a) {
            coeffs(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) =
                (basis[a].adjoint() * ch.ops()[k]).trace() / norms[a];
        }
    }
    ProcessMatrix pm{basis, coeffs.transpose() * coeffs.conjugate()};
    // sum_mn chi_mn B_n^dag B_m = 1 for a trace-preserving map
    Matrix tp = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            cplx c = pm.chi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (std::abs(c) > 0.0) {
                tp += c * basis[b].adjoint() * basis[a];
            }
        }
    }
    if ((tp - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-6) {
        throw InvariantViolation("process matrix violates trace preservation");
    }
    return pm;
}

}  // namespace openqs
