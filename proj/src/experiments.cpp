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

#include "openqs/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>

#include <unsupported/Eigen/KroneckerProduct>

namespace openqs {

namespace {

constexpr double kRangeSlack = 1e-9;

double clamp_checked(double v, double lo, double hi, const std::string &what) {
    if (!std::isfinite(v) || v < lo - kRangeSlack || v > hi + kRangeSlack) {
        throw InvariantViolation(what + " = " + std::to_string(v) + " is outside [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
    }
    return std::clamp(v, lo, hi);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string bits_of(std::size_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
        if ((index >> (n - 1 - q)) & 1U) {
            s[q] = '1';
        }
    }
    return s;
}

const char *path_name(Path p) { return p == Path::Sequence ? "sequence" : "analytic"; }

std::map<std::string, MetaValue> base_metadata(const RunOptions &opts) {
    return {
        {"model", std::string("ideal")},
        {"path", std::string(path_name(opts.path))},
        {"seed", static_cast<std::int64_t>(opts.seed)},
        {"shots", static_cast<std::int64_t>(opts.shots)},
    };
}

// Builds step entries for a fixed list of observables, populations and target.
class Recorder {
   public:
    Recorder(std::vector<PauliString> observables, std::vector<std::string> populations,
             std::optional<PureState> target, const RunOptions &opts)
        : observables_(std::move(observables)),
          populations_(std::move(populations)),
          target_(std::move(target)),
          shots_(opts.shots),
          rng_(opts.seed) {}

    StepEntry snapshot(std::string label, const DensityMatrix &sys) {
        StepEntry e;
        e.label = std::move(label);
        for (const PauliString &s : observables_) {
            std::string key = stabilizer_label(s);
            e.expectations[key] = clamp_checked(expectation(sys, s), -1.0, 1.0, "<" + key + ">");
        }
        for (const std::string &bits : populations_) {
            std::size_t index = std::stoul(bits, nullptr, 2);
            e.populations[bits] = clamp_checked(sys.population(index), 0.0, 1.0, "P" + bits);
        }
        if (target_) {
            e.fidelity = fidelity(sys, *target_);
        }
        if (shots_ > 0) {
            Counts all;
            for (MeasurementBasis b : {MeasurementBasis::Z, MeasurementBasis::X}) {
                const char *prefix = b == MeasurementBasis::Z ? "Z:" : "X:";
                for (const auto &[k, v] : sample_shots(sys, b, shots_, rng_)) {
                    all[prefix + k] = v;
                }
            }
            e.counts = std::move(all);
        }
        return e;
    }

   private:
    std::vector<PauliString> observables_;
    std::vector<std::string> populations_;
    std::optional<PureState> target_;
    std::uint64_t shots_;
    std::mt19937_64 rng_;
};

DensityMatrix system_after(const Circuit &c, const DensityMatrix &sys) {
    DensityMatrix joint = tensor(DensityMatrix(basis_state("1")), sys);
    DensityMatrix out = run_circuit(c, joint);
    std::vector<std::size_t> keep(sys.n_qubits());
    for (std::size_t q = 0; q < keep.size(); ++q) {
        keep[q] = q + 1;
    }
    return partial_trace(out, keep);
}

std::vector<PauliString> ghz_observables() {
    return {PauliString::parse("ZZII"), PauliString::parse("IZZI"), PauliString::parse("IIZZ"),
            PauliString::parse("ZIIZ"), PauliString::parse("XXXX")};
}

// The four-step cooling cycle from `initial`; `signs[k]` is the target
// eigenvalue of step k+1.
ExperimentRecord run_ghz_cycle(const std::string &protocol, const DensityMatrix &initial, const std::string &initial_label,
                               const std::array<int, 4> &signs, const PureState &target, const RunOptions &opts) {
    ExperimentRecord rec{protocol, base_metadata(opts), {}};
    rec.metadata["blue"] = opts.include_optional_blue;
    rec.metadata["signs"] = std::vector<std::int64_t>(signs.begin(), signs.end());

    Recorder recorder(ghz_observables(), {"0000", "1111"}, target, opts);
    DensityMatrix sys = initial;
    rec.steps.push_back(recorder.snapshot(initial_label, sys));
    for (int step = 1; step <= 4; ++step) {
        int sign = signs[static_cast<std::size_t>(step - 1)];
        if (opts.path == Path::Sequence) {
            SequenceVariant v;
            v.include_optional_blue = opts.include_optional_blue;
            v.sign = sign;
            sys = system_after(ghz_pump_step(step, v), sys);
        } else {
            sys = apply_channel(ideal_ghz_step(step, sign), sys);
        }
        rec.steps.push_back(recorder.snapshot("step " + std::to_string(step), sys));
    }
    rec.validate();
    return rec;
}

}  // namespace

void ExperimentRecord::validate() const {
    for (const StepEntry &s : steps) {
        for (const auto &[k, v] : s.expectations) {
            if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
                throw InvariantViolation("step '" + s.label + "': expectation " + k + " = " + std::to_string(v) +
                                         " outside [-1, 1]");
            }
        }
        for (const auto &[k, v] : s.populations) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw InvariantViolation("step '" + s.label + "': population " + k + " = " + std::to_string(v) +
                                         " outside [0, 1]");
            }
        }
        if (s.fidelity && (!std::isfinite(*s.fidelity) || *s.fidelity < 0.0 || *s.fidelity > 1.0)) {
            throw InvariantViolation("step '" + s.label + "': fidelity outside [0, 1]");
        }
    }
}

std::string stabilizer_label(const PauliString &s) {
    std::string out = s.sign() < 0 ? "-" : "";
    for (std::size_t q = 0; q < s.n_qubits(); ++q) {
        Pauli f = s.factor(q);
        if (f == Pauli::I) {
            continue;
        }
        out += "IXYZ"[static_cast<int>(f)];
        out += std::to_string(q + 1);
    }
    return out == "" || out == "-" ? out + "I" : out;
}

// ------------------------------------------------------------ Bell cooling

ExperimentRecord run_bell_cooling(double p, int cycles, bool probe_half_cycles, const RunOptions &opts) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    if (cycles < 1) {
        throw std::invalid_argument("cycles must be at least 1");
    }
    KrausChannel xx = opts.path == Path::Sequence
                          ? channel_from_circuit(bell_cooling_circuit(BellStabilizer::XX, p), basis_state("1"))
                          : ideal_bell_pump(BellStabilizer::XX, p);
    KrausChannel yy = opts.path == Path::Sequence
                          ? channel_from_circuit(bell_cooling_circuit(BellStabilizer::YY, p), basis_state("1"))
                          : ideal_bell_pump(BellStabilizer::YY, p);

    ExperimentRecord rec{"bell-cooling", base_metadata(opts), {}};
    rec.metadata["p"] = p;
    rec.metadata["cycles"] = static_cast<std::int64_t>(cycles);
    rec.metadata["probe_half_cycles"] = probe_half_cycles;

    Recorder recorder({PauliString::parse("XX"), PauliString::parse("YY"), PauliString::parse("ZZ")}, {},
                      bell_state(Bell::PsiMinus), opts);
    auto snapshot = [&](std::string label, const DensityMatrix &rho) {
        StepEntry e = recorder.snapshot(std::move(label), rho);
        std::array<double, 4> pops = bell_populations(rho);
        for (std::size_t i = 0; i < 4; ++i) {
            e.populations[std::string(bell_name(static_cast<Bell>(i)))] =
                clamp_checked(pops[i], 0.0, 1.0, "Bell population");
        }
        return e;
    };

    DensityMatrix rho = fully_mixed(2);
    rec.steps.push_back(snapshot("initial", rho));
    for (int c = 1; c <= cycles; ++c) {
        rho = apply_channel(xx, rho);
        if (probe_half_cycles) {
            rec.steps.push_back(snapshot("cycle " + std::to_string(c) + " X1X2", rho));
        }
        rho = apply_channel(yy, rho);
        rec.steps.push_back(snapshot(probe_half_cycles ? "cycle " + std::to_string(c) + " Y1Y2"
                                                       : "cycle " + std::to_string(c),
                                     rho));
    }
    rec.validate();
    return rec;
}

// ------------------------------------------------------------ GHZ family

ExperimentRecord run_ghz_pumping(const RunOptions &opts, int pump_sign) {
    if (pump_sign != 1 && pump_sign != -1) {
        throw std::invalid_argument("pump sign must be +1 or -1");
    }
    if (pump_sign < 0) {
        ExperimentRecord rec = run_excited_pumping(opts);
        rec.protocol = "ghz-pumping";
        return rec;
    }
    return run_ghz_cycle("ghz-pumping", fully_mixed(4), "mixed", {1, 1, 1, 1}, cat_state("0000", "1111", +1), opts);
}

ExperimentRecord run_anyon_pushing(const RunOptions &opts) {
    return run_ghz_cycle("anyon-pushing", DensityMatrix(basis_state("0111")), "initial", {1, 1, 1, 1},
                         cat_state("0000", "1111", +1), opts);
}

ExperimentRecord run_excited_pumping(const RunOptions &opts) {
    return run_ghz_cycle("excited-pumping", fully_mixed(4), "mixed", {1, -1, -1, -1}, cat_state("0010", "1101", -1),
                         opts);
}

ExperimentRecord run_repeated_x_pumping(double p, int steps, const std::vector<std::size_t> &schedule,
                                        const RunOptions &opts) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    if (steps < 1) {
        throw std::invalid_argument("steps must be at least 1");
    }
    if (!schedule.empty() && schedule.size() != static_cast<std::size_t>(steps)) {
        throw std::invalid_argument("schedule must list one red qubit per step (" + std::to_string(steps) +
                                    "), got " + std::to_string(schedule.size()));
    }
    for (std::size_t q : schedule) {
        if (q < 1 || q > 4) {
            throw std::invalid_argument("schedule entries must be system qubits 1..4");
        }
    }
    ExperimentRecord rec{"repeated-x-pumping", base_metadata(opts), {}};
    rec.metadata["p"] = p;
    rec.metadata["effective_p"] = effective_pump_probability(p);
    rec.metadata["steps"] = static_cast<std::int64_t>(steps);
    std::vector<std::int64_t> sched;
    for (int k = 0; k < steps; ++k) {
        sched.push_back(schedule.empty() ? 4 : static_cast<std::int64_t>(schedule[static_cast<std::size_t>(k)]));
    }
    rec.metadata["schedule"] = sched;

    Recorder recorder(ghz_observables(), {"1111"}, std::nullopt, opts);
    DensityMatrix sys(basis_state("1111"));
    rec.steps.push_back(recorder.snapshot("initial", sys));
    for (int k = 1; k <= steps; ++k) {
        auto red = static_cast<std::size_t>(sched[static_cast<std::size_t>(k - 1)]);
        if (opts.path == Path::Sequence) {
            SequenceVariant v;
            v.p = p;
            v.red_qubit = red;
            sys = system_after(optimized_x_pump_circuit(v), sys);
        } else {
            sys = apply_channel(ideal_optimized_x_pump(p, red), sys);
        }
        rec.steps.push_back(recorder.snapshot("step " + std::to_string(k), sys));
    }
    rec.validate();
    return rec;
}

// ------------------------------------------------------------- four-body

ExperimentRecord run_four_body(const std::vector<double> &beta_grid, const RunOptions &opts) {
    if (beta_grid.empty()) {
        throw std::invalid_argument("beta grid must not be empty");
    }
    ExperimentRecord rec{"four-body", base_metadata(opts), {}};
    rec.metadata["beta_grid"] = beta_grid;

    Recorder recorder({PauliString::parse("XXXX")}, {"0000", "1111"}, std::nullopt, opts);
    const DensityMatrix start(basis_state("1111"));
    const Matrix xxxx = PauliString::parse("XXXX").matrix();
    for (double beta : beta_grid) {
        if (!std::isfinite(beta)) {
            throw std::invalid_argument("beta values must be finite");
        }
        double ancilla_one = 1.0;
        DensityMatrix sys = start;
        if (opts.path == Path::Sequence) {
            DensityMatrix joint =
                run_circuit(four_body_evolution_circuit(beta), tensor(DensityMatrix(basis_state("1")), start));
            ancilla_one = partial_trace(joint, {0}).population(1);
            sys = partial_trace(joint, {1, 2, 3, 4});
        } else {
            Matrix u = hermitian_exp(xxxx, beta / 2);
            sys = DensityMatrix(4, u * start.data() * u.adjoint());
        }
        // Comparison: four independent single-qubit rotations exp(-i beta/2 X_i).
        Matrix one_body = unitary_of(GateOp::rot(Axis::X, beta), 4);
        DensityMatrix product(4, one_body * start.data() * one_body.adjoint());

        StepEntry e = recorder.snapshot("beta=" + format_number(beta), sys);
        e.populations["ancilla_1"] = clamp_checked(ancilla_one, 0.0, 1.0, "ancilla population");
        e.populations["one_body_0000"] = clamp_checked(product.population(0), 0.0, 1.0, "P0000");
        e.populations["one_body_1111"] = clamp_checked(product.population(15), 0.0, 1.0, "P1111");
        rec.steps.push_back(std::move(e));
    }
    rec.validate();
    return rec;
}

// ------------------------------------------------------------ custom runs

ExperimentRecord run_custom_sequence(const Circuit &circ, const DensityMatrix &initial, int repetitions,
                                     const RunOptions &opts) {
    if (repetitions < 1) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    const std::size_t n_sys = initial.n_qubits();
    if (circ.n_qubits() != n_sys + 1) {
        throw std::invalid_argument("custom sequence acts on " + std::to_string(circ.n_qubits()) +
                                    " qubits but the system has " + std::to_string(n_sys) + " plus the ancilla");
    }
    std::vector<PauliString> obs;
    for (std::size_t q = 0; q + 1 < n_sys; ++q) {
        obs.push_back(PauliString::on(n_sys, Pauli::Z, {q, q + 1}));
    }
    if (n_sys > 2) {
        obs.push_back(PauliString::on(n_sys, Pauli::Z, {0, n_sys - 1}));
    }
    obs.push_back(PauliString(std::vector<Pauli>(n_sys, Pauli::X)));

    ExperimentRecord rec{"custom", base_metadata(opts), {}};
    rec.metadata["repetitions"] = static_cast<std::int64_t>(repetitions);
    rec.metadata["gates"] = static_cast<std::int64_t>(circ.size());

    Circuit pass = circ;
    if (pass.empty() || !std::holds_alternative<AncillaReset>(pass.elements().back().kind())) {
        pass.append(AncillaReset{});
    }
    Recorder recorder(obs, {}, std::nullopt, opts);
    DensityMatrix sys = initial;
    rec.steps.push_back(recorder.snapshot("initial", sys));
    for (int k = 1; k <= repetitions; ++k) {
        sys = system_after(pass, sys);
        rec.steps.push_back(recorder.snapshot("pass " + std::to_string(k), sys));
    }
    rec.validate();
    return rec;
}

// ------------------------------------------------------------------- QND

QndReport run_qnd(const DensityMatrix &input, const RunOptions &opts) {
    if (input.n_qubits() != 4) {
        throw std::invalid_argument("QND input must be a 4-qubit system state");
    }
    const Matrix u = opts.path == Path::Sequence ? circuit_unitary(qnd_mapping_circuit()) : ideal_qnd_unitary();
    const Matrix joint = tensor(DensityMatrix(basis_state("1")), input).data();
    const Matrix out = u * joint * u.adjoint();

    const Matrix xxxx = PauliString::parse("XXXX").matrix();
    const Matrix id = Matrix::Identity(16, 16);
    const Matrix p_plus = (id + xxxx) * 0.5;
    const Matrix p_minus = (id - xxxx) * 0.5;
    auto prob = [](const Matrix &proj, const Matrix &rho) { return std::clamp((proj * rho).trace().real(), 0.0, 1.0); };

    const Matrix block0 = out.topLeftCorner(16, 16);
    const Matrix block1 = out.bottomRightCorner(16, 16);
    const double pm0 = std::clamp(block0.trace().real(), 0.0, 1.0);
    const double pm1 = std::clamp(block1.trace().real(), 0.0, 1.0);

    auto branch = [&](const Matrix &block, double pm, const Matrix &proj) {
        QndBranch b;
        b.probability = pm;
        if (pm > 1e-12) {
            b.post_state = DensityMatrix(4, block / pm);
            b.in_eigenspace = prob(proj, b.post_state->data());
        }
        return b;
    };

    DensityMatrix output(4, block0 + block1);
    const double pin_p = prob(p_plus, input.data());
    const double pin_m = prob(p_minus, input.data());
    const double pout_p = prob(p_plus, output.data());
    const double pout_m = prob(p_minus, output.data());
    QndBranch b0 = branch(block0, pm0, p_plus);
    QndBranch b1 = branch(block1, pm1, p_minus);

    auto sq = [](double x) { return x * x; };
    const double fm = std::clamp(sq(std::sqrt(pin_p * pm0) + std::sqrt(pin_m * pm1)), 0.0, 1.0);
    const double fqnd = std::clamp(sq(std::sqrt(pin_p * pout_p) + std::sqrt(pin_m * pout_m)), 0.0, 1.0);
    const double fqsp = std::clamp(pm0 * b0.in_eigenspace + pm1 * b1.in_eigenspace, 0.0, 1.0);

    return QndReport{pin_p,
                     pin_m,
                     pout_p,
                     pout_m,
                     std::clamp((p_plus * input.data() * p_plus).trace().real(), 0.0, 1.0),
                     std::clamp((p_minus * input.data() * p_minus).trace().real(), 0.0, 1.0),
                     std::move(b0),
                     std::move(b1),
                     fm,
                     fqnd,
                     fqsp,
                     std::move(output)};
}

ExperimentRecord QndReport::to_record() const {
    ExperimentRecord rec{"qnd", {}, {}};
    rec.metadata["model"] = std::string("ideal");
    rec.metadata["F_M"] = f_m;
    rec.metadata["F_QND"] = f_qnd;
    rec.metadata["F_QSP"] = f_qsp;
    rec.metadata["N_plus"] = n_plus;
    rec.metadata["N_minus"] = n_minus;

    const PauliString xxxx = PauliString::parse("XXXX");
    StepEntry in;
    in.label = "input";
    in.populations = {{"+", p_in_plus}, {"-", p_in_minus}};
    rec.steps.push_back(in);

    const QndBranch *branches[] = {&outcome0, &outcome1};
    for (std::size_t k = 0; k < 2; ++k) {
        const QndBranch &b = *branches[k];
        StepEntry e;
        e.label = "ancilla " + std::to_string(k);
        e.populations["p_m"] = b.probability;
        e.populations[k == 0 ? "+" : "-"] = b.in_eigenspace;
        if (b.post_state) {
            e.expectations[stabilizer_label(xxxx)] = std::clamp(expectation(*b.post_state, xxxx), -1.0, 1.0);
        }
        rec.steps.push_back(std::move(e));
    }

    StepEntry o;
    o.label = "output";
    o.populations = {{"+", p_out_plus}, {"-", p_out_minus}};
    o.expectations[stabilizer_label(xxxx)] = std::clamp(expectation(output, xxxx), -1.0, 1.0);
    rec.steps.push_back(std::move(o));
    rec.validate();
    return rec;
}

// -------------------------------------------------------------- sampling

Counts sample_shots(const DensityMatrix &rho, MeasurementBasis basis, std::uint64_t shots, std::mt19937_64 &rng) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const std::size_t n = rho.n_qubits();
    const std::size_t d = rho.dim();
    Matrix m = rho.data();
    if (basis == MeasurementBasis::X) {
        Matrix h1(2, 2);
        const double r = 1.0 / std::sqrt(2.0);
        h1 << r, r, r, -r;
        Matrix h = Matrix::Identity(1, 1);
        for (std::size_t q = 0; q < n; ++q) {
            h = Eigen::kroneckerProduct(h, h1).eval();
        }
        m = h * m * h.adjoint();
    }
    std::vector<double> cumulative(d);
    double total = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < d; ++i) {
        double pi = std::max(0.0, m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
        if (pi < 1e-15) {
            pi = 0.0;
        } else {
            last_nonzero = i;
        }
        total += pi;
        cumulative[i] = total;
    }
    std::vector<std::uint64_t> tally(d, 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        // 53 random bits mapped to [0, 1): the same on every platform.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t idx = it == cumulative.end() ? last_nonzero : static_cast<std::size_t>(it - cumulative.begin());
        ++tally[idx];
    }
    Counts counts;
    for (std::size_t i = 0; i < d; ++i) {
        if (tally[i] > 0) {
            counts[bits_of(i, n)] = tally[i];
        }
    }
    return counts;
}

Counts sample_shots(const DensityMatrix &rho, MeasurementBasis basis, std::uint64_t shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_shots(rho, basis, shots, rng);
}

}  // namespace openqs
