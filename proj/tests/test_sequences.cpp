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

#include <gtest/gtest.h>

#include "openqs/sequences.hpp"
#include "oracle.hpp"

namespace openqs {
namespace {

using oracle::kPi;

Matrix through(const Circuit &c, const Matrix &sys) {
    DensityMatrix out = run_circuit(c, DensityMatrix(c.n_qubits(), oracle::with_ancilla(sys)));
    return oracle::drop_ancilla(out.data());
}

GateOp only(const Circuit &c) {
    EXPECT_EQ(c.size(), 1u);
    return c.elements().front();
}

// ------------------------------------------------------------------ parsing

TEST(ParseSequence, CollectiveRotation) {
    Circuit c = parse_sequence("U_X(π/2)");
    GateOp op = only(c);
    const auto &g = std::get<CollectiveRot>(op.kind());
    EXPECT_EQ(g.axis, Axis::X);
    EXPECT_DOUBLE_EQ(g.theta, kPi / 2);
    EXPECT_TRUE(g.participants.empty());
}

TEST(ParseSequence, SubscriptedSingleIonRotation) {
    Circuit c = parse_sequence("U_{Z₀}(−π/2)");
    GateOp op = only(c);
    const auto &g = std::get<SingleZ>(op.kind());
    EXPECT_EQ(g.target, 0u);
    EXPECT_DOUBLE_EQ(g.theta, -kPi / 2);
}

TEST(ParseSequence, AsciiSpellings) {
    EXPECT_DOUBLE_EQ(std::get<MS>(only(parse_sequence("U_{X^2}(pi/4)")).kind()).theta, kPi / 4);
    EXPECT_EQ(std::get<MS>(only(parse_sequence("U_{Y²}(pi)")).kind()).axis, Axis::Y);
    EXPECT_EQ(std::get<SingleZ>(only(parse_sequence("U_Z_3(-3pi/4)")).kind()).target, 3u);
    EXPECT_DOUBLE_EQ(std::get<SingleZ>(only(parse_sequence("U_Z3(-3*pi/4)")).kind()).theta, -3 * kPi / 4);
    EXPECT_DOUBLE_EQ(std::get<CollectiveRot>(only(parse_sequence("U_Y(0)")).kind()).theta, 0.0);
}

TEST(ParseSequence, ProbabilityScaling) {
    SequenceVariant v;
    v.p = 0.5;
    EXPECT_DOUBLE_EQ(std::get<MS>(only(parse_sequence("U_{Y²}(π/4 × p)", v)).kind()).theta, kPi / 8);
    EXPECT_DOUBLE_EQ(std::get<SingleZ>(only(parse_sequence("U_{Z₄}(-pi/2*p)", v)).kind()).theta, -kPi / 4);
}

TEST(ParseSequence, IonPairRestrictsParticipants) {
    GateOp op = only(parse_sequence("U_{X²}^{(0,1)}(−π/3)", {}, 3));
    const auto &g = std::get<MS>(op.kind());
    EXPECT_EQ(g.participants, (std::vector<std::size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(g.theta, -kPi / 3);
}

TEST(ParseSequence, ListingIsAnOperatorProduct) {
    Circuit c = parse_sequence("U_X(π/2) U_{Z₁}(π)\nU_Y(π/4)");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_TRUE(std::holds_alternative<CollectiveRot>(c.elements()[0].kind()));
    EXPECT_EQ(std::get<CollectiveRot>(c.elements()[0].kind()).axis, Axis::Y);
    EXPECT_TRUE(std::holds_alternative<SingleZ>(c.elements()[1].kind()));
    EXPECT_EQ(std::get<CollectiveRot>(c.elements()[2].kind()).axis, Axis::X);
}

TEST(ParseSequence, CommentsAndBlankLinesIgnored) {
    Circuit c = parse_sequence("# header\n\n  U_X(π) # trailing\n# U_Y(π)\n");
    EXPECT_EQ(c.size(), 1u);
}

TEST(ParseSequence, AnnotationsBindToVariant) {
    const char *text = "[blue]U_X(π/2) [red]U_{Z₂}(π/2) [red:4]U_{Z₄}(π/4)";
    SequenceVariant keep;
    EXPECT_EQ(parse_sequence(text, keep).size(), 3u);

    SequenceVariant drop;
    drop.include_optional_blue = false;
    EXPECT_EQ(parse_sequence(text, drop).size(), 2u);

    SequenceVariant flipped;
    flipped.sign = -1;
    flipped.red_qubit = 2;
    Circuit c = parse_sequence(text, flipped);
    const auto &moved = std::get<SingleZ>(c.elements()[0].kind());
    EXPECT_EQ(moved.target, 2u);
    EXPECT_DOUBLE_EQ(moved.theta, -kPi / 4);
    const auto &red = std::get<SingleZ>(c.elements()[1].kind());
    EXPECT_EQ(red.target, 2u);
    EXPECT_DOUBLE_EQ(red.theta, -kPi / 2);
    EXPECT_DOUBLE_EQ(std::get<CollectiveRot>(c.elements()[2].kind()).theta, kPi / 2);
}

TEST(ParseSequence, DetachedAnnotationAppliesToNextToken) {
    SequenceVariant drop;
    drop.include_optional_blue = false;
    EXPECT_TRUE(parse_sequence("[blue] U_X(π/2)", drop).empty());
}

TEST(ParseSequence, Errors) {
    EXPECT_THROW(parse_sequence("U_W(π)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_{X³}(π)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_X(π/)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_X(2)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_X(abc)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_X(π/0)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_X(π"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_X π)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("hello"), SequenceParseError);
    EXPECT_THROW(parse_sequence("[green]U_X(π)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("[red:3]U_{Z₄}(π)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("[red:1]U_X(π)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_X(π) [blue]"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_{Z₇}(π)"), SequenceParseError);
    EXPECT_THROW(parse_sequence("U_{Z₁}^{(0,1)}(π)"), SequenceParseError);
    try {
        parse_sequence("U_X(π)\nU_Q(π)");
        FAIL() << "expected a parse error";
    } catch (const SequenceParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(SequenceVariant, Validation) {
    SequenceVariant v;
    v.red_qubit = 0;
    EXPECT_THROW(v.validate(), std::invalid_argument);
    v.red_qubit = 5;
    EXPECT_THROW(v.validate(), std::invalid_argument);
    v.red_qubit = 3;
    v.sign = 0;
    EXPECT_THROW(v.validate(), std::invalid_argument);
    v.sign = -1;
    v.p = 1.5;
    EXPECT_THROW(v.validate(), std::invalid_argument);
    v.p = 0.25;
    EXPECT_NO_THROW(v.validate());
}

TEST(BuiltinSequences, AllListingsParse) {
    std::vector<std::string> names = builtin_sequence_names();
    EXPECT_EQ(names.size(), 6u);
    for (const std::string &name : names) {
        EXPECT_NO_THROW(parse_sequence(builtin_sequence(name))) << name;
    }
    EXPECT_THROW(builtin_sequence("missing"), std::invalid_argument);
}

// ---------------------------------------------------------- GHZ cooling

TEST(GhzPumpStep, EachStepReachesItsStabilizerFromMixed) {
    const char *labels[] = {"ZZII", "IZZI", "IIZZ", "XXXX"};
    for (int step = 1; step <= 4; ++step) {
        Circuit c = ghz_pump_step(step);
        EXPECT_TRUE(std::holds_alternative<AncillaReset>(c.elements().back().kind()));
        DensityMatrix out = run_circuit(c, DensityMatrix(5, oracle::with_ancilla(oracle::mixed(4))));
        EXPECT_NEAR(out.data().bottomRightCorner(16, 16).trace().real(), 1.0, 1e-12);
        Matrix sys = oracle::drop_ancilla(out.data());
        EXPECT_NEAR(oracle::ev(sys, oracle::pstr(labels[step - 1])), 1.0, 1e-9) << "step " << step;
    }
}

TEST(GhzPumpStep, Step1LeavesOtherCorrelatorsAtZeroFromMixed) {
    Matrix sys = through(ghz_pump_step(1), oracle::mixed(4));
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("ZZII")), 1.0, 1e-9);
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("IZZI")), 0.0, 1e-9);
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("IIZZ")), 0.0, 1e-9);
}

TEST(GhzPumpStep, FullCycleFromMixedReachesGhz) {
    Matrix ghz = oracle::proj((oracle::ket("0000") + oracle::ket("1111")) / std::sqrt(2.0));
    for (bool blue : {true, false}) {
        SequenceVariant v;
        v.include_optional_blue = blue;
        Matrix sys = oracle::mixed(4);
        for (int step = 1; step <= 4; ++step) {
            sys = through(ghz_pump_step(step, v), sys);
        }
        EXPECT_NEAR((sys * ghz).trace().real(), 1.0, 1e-9) << "blue=" << blue;
    }
}

TEST(GhzPumpStep, ExcitedPumpingReachesOddGhz) {
    Matrix target = oracle::proj((oracle::ket("0010") - oracle::ket("1101")) / std::sqrt(2.0));
    Matrix sys = oracle::mixed(4);
    for (int step = 1; step <= 4; ++step) {
        SequenceVariant v;
        v.sign = step == 1 ? +1 : -1;
        sys = through(ghz_pump_step(step, v), sys);
    }
    EXPECT_NEAR((sys * target).trace().real(), 1.0, 1e-9);
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("ZZII")), 1.0, 1e-9);
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("IZZI")), -1.0, 1e-9);
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("IIZZ")), -1.0, 1e-9);
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("XXXX")), -1.0, 1e-9);
}

TEST(GhzPumpStep, GateCountsPerCycle) {
    for (bool blue : {true, false}) {
        SequenceVariant v;
        v.include_optional_blue = blue;
        GateCounts total;
        for (int step = 1; step <= 4; ++step) {
            GateCounts c = count_gates(ghz_pump_step(step, v));
            total.entangling += c.entangling;
            total.collective += c.collective;
            total.single_qubit += c.single_qubit;
            total.dissipative += c.dissipative;
        }
        EXPECT_EQ(total.entangling, 16u);
        EXPECT_EQ(total.collective, blue ? 28u : 20u);
        EXPECT_EQ(total.single_qubit, blue ? 36u : 34u);
        EXPECT_EQ(total.dissipative, 4u);
    }
}

TEST(GhzPumpStep, Step4ChannelIsTheIdealPump) {
    KrausChannel seq = channel_from_circuit(ghz_pump_step(4), basis_state("1"));
    EXPECT_NEAR(jamiolkowski_fidelity(seq, ideal_ghz_step(4)), 1.0, 1e-9);
}

TEST(GhzPumpStep, ZCorrelatorsMatchIdealPumpOnRandomInputs) {
    std::mt19937_64 rng(7);
    const char *zz[] = {"ZZII", "IZZI", "IIZZ", "ZIIZ"};
    for (int step = 1; step <= 3; ++step) {
        Circuit c = ghz_pump_step(step);
        KrausChannel ideal = ideal_ghz_step(step);
        for (int trial = 0; trial < 5; ++trial) {
            Matrix rho = oracle::random_state(4, rng);
            Matrix a = through(c, rho);
            Matrix b = apply_channel_operator(ideal, rho);
            for (const char *label : zz) {
                EXPECT_NEAR(oracle::ev(a, oracle::pstr(label)), oracle::ev(b, oracle::pstr(label)), 1e-9)
                    << "step " << step << " " << label;
            }
        }
    }
}

TEST(GhzPumpStep, UntouchedPairCorrelatorsAreHeisenbergInvariant) {
    // Step 1 flips qubit 2, so only Z3Z4 is untouched; step 2 flips qubit 3
    // leaving Z1Z2; step 3 flips qubit 4 leaving Z1Z2 and Z2Z3.
    const std::vector<std::vector<const char *>> untouched = {{"IIZZ"}, {"ZZII"}, {"ZZII", "IZZI"}};
    for (int step = 1; step <= 3; ++step) {
        KrausChannel ch = channel_from_circuit(ghz_pump_step(step), basis_state("1"));
        for (const char *label : untouched[static_cast<std::size_t>(step - 1)]) {
            Matrix obs = oracle::pstr(label);
            EXPECT_LT(oracle::max_abs(adjoint_action(ch, obs) - obs), 1e-9) << "step " << step << " " << label;
        }
    }
}

TEST(GhzPumpStep, PushingAnExcitationChangesTheNeighbouringCorrelator) {
    // |0111> has Z1Z2 = -1; pumping Z1Z2 flips qubit 2 and moves the
    // excitation to the (2,3) corner, so <Z2Z3> cannot be invariant.
    Matrix sys = through(ghz_pump_step(1), oracle::proj(oracle::ket("0111")));
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("ZZII")), 1.0, 1e-9);
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("IZZI")), -1.0, 1e-9);
}

TEST(GhzPumpStep, LeftToRightReadingDoesNotPump) {
    Circuit forward = ghz_pump_step(1);
    std::vector<GateOp> coherent(forward.elements().begin(), forward.elements().end() - 1);
    std::reverse(coherent.begin(), coherent.end());
    Circuit wrong(5, coherent);
    wrong.append(AncillaReset{});
    Matrix sys = through(wrong, oracle::mixed(4));
    EXPECT_GT(std::abs(oracle::ev(sys, oracle::pstr("ZZII")) - 1.0), 0.1);
}

TEST(GhzPumpStep, InvalidStep) {
    EXPECT_THROW(ghz_pump_step(0), std::invalid_argument);
    EXPECT_THROW(ghz_pump_step(5), std::invalid_argument);
}

// ------------------------------------------------- optimized X1X2X3X4 pump

TEST(OptimizedXPump, DeterministicPumpFrom1111) {
    Matrix sys = through(optimized_x_pump_circuit(), oracle::proj(oracle::ket("1111")));
    EXPECT_NEAR(oracle::ev(sys, oracle::pstr("XXXX")), -1.0, 1e-9);
}

TEST(OptimizedXPump, HalfProbabilityApproachesGeometrically) {
    const std::size_t schedule[] = {4, 3, 2, 1, 1};
    Matrix sys = oracle::proj(oracle::ket("1111"));
    for (int k = 1; k <= 5; ++k) {
        SequenceVariant v;
        v.p = 0.5;
        v.red_qubit = schedule[k - 1];
        sys = through(optimized_x_pump_circuit(v), sys);
        EXPECT_NEAR(oracle::ev(sys, oracle::pstr("XXXX")), -(1.0 - std::pow(0.5, k)), 1e-9) << "k=" << k;
        for (const char *zz : {"ZZII", "IZZI", "IIZZ", "ZIIZ"}) {
            EXPECT_NEAR(oracle::ev(sys, oracle::pstr(zz)), 1.0, 1e-9);
        }
    }
}

TEST(OptimizedXPump, StabilizersMatchIdealWithEffectiveProbability) {
    std::mt19937_64 rng(19);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (std::size_t red : {1u, 4u}) {
            SequenceVariant v;
            v.p = p;
            v.red_qubit = red;
            Circuit c = optimized_x_pump_circuit(v);
            KrausChannel ideal = ideal_optimized_x_pump(p, red);
            for (int trial = 0; trial < 3; ++trial) {
                Matrix rho = oracle::random_state(4, rng);
                Matrix a = through(c, rho);
                Matrix b = apply_channel_operator(ideal, rho);
                for (const char *label : {"XXXX", "ZZII", "IZZI", "IIZZ", "ZIIZ"}) {
                    EXPECT_NEAR(oracle::ev(a, oracle::pstr(label)), oracle::ev(b, oracle::pstr(label)), 1e-9)
                        << "p=" << p << " red=" << red << " " << label;
                }
            }
        }
    }
    EXPECT_NEAR(effective_pump_probability(0.25), 0.14644660940672624, 1e-15);
    EXPECT_NEAR(effective_pump_probability(0.5), 0.5, 1e-15);
    EXPECT_NEAR(effective_pump_probability(0.75), 0.85355339059327373, 1e-15);
}

// ------------------------------------------------------------------- QND

TEST(QndMapping, UnitaryMatchesClosedForm) {
    Circuit c = qnd_mapping_circuit();
    EXPECT_TRUE(c.is_coherent());
    EXPECT_LT(phase_distance(circuit_unitary(c), ideal_qnd_unitary()), 1e-9);
}

TEST(QndMapping, ClosedFormIsBuiltFromIndependentMatrices) {
    using oracle::pauli;
    Matrix pp = (Matrix::Identity(16, 16) + oracle::pstr("XXXX")) / 2;
    Matrix pm = (Matrix::Identity(16, 16) - oracle::pstr("XXXX")) / 2;
    Matrix m = Eigen::kroneckerProduct(Matrix(cplx(0, -1) / std::sqrt(2.0) * (pauli('X') + pauli('Y'))), pp).eval() +
               Eigen::kroneckerProduct(Matrix((pauli('I') - cplx(0, 1) * pauli('Z')) / std::sqrt(2.0)), pm).eval();
    EXPECT_LT(oracle::max_abs(m - ideal_qnd_unitary()), 1e-14);
    EXPECT_LT(oracle::max_abs(m * m.adjoint() - Matrix::Identity(32, 32)), 1e-12);
}

TEST(QndMapping, AncillaFlipsOnlyInPlusEigenspace) {
    Matrix u = circuit_unitary(qnd_mapping_circuit());
    Matrix plus = oracle::proj((oracle::ket("0000") + oracle::ket("1111")) / std::sqrt(2.0));
    Matrix minus = oracle::proj((oracle::ket("0000") - oracle::ket("1111")) / std::sqrt(2.0));
    Matrix out_plus = u * oracle::with_ancilla(plus) * u.adjoint();
    Matrix out_minus = u * oracle::with_ancilla(minus) * u.adjoint();
    EXPECT_NEAR(out_plus.topLeftCorner(16, 16).trace().real(), 1.0, 1e-9);
    EXPECT_NEAR(out_minus.bottomRightCorner(16, 16).trace().real(), 1.0, 1e-9);
}

// ------------------------------------------------------------ four-body

TEST(FourBody, ZeroAngleIsIdentity) {
    std::mt19937_64 rng(3);
    Matrix rho = oracle::random_state(4, rng);
    EXPECT_LT(oracle::max_abs(through(four_body_evolution_circuit(0.0), rho) - rho), 1e-12);
}

TEST(FourBody, PiRotatesOnesIntoZeros) {
    Matrix sys = through(four_body_evolution_circuit(kPi), oracle::proj(oracle::ket("1111")));
    EXPECT_NEAR(sys(0, 0).real(), 1.0, 1e-9);
}

TEST(FourBody, ImplementsFourBodyUnitaryAndReleasesAncilla) {
    std::mt19937_64 rng(11);
    for (double beta : {0.3, 1.0, 2.2, kPi, 5.0}) {
        Circuit c = four_body_evolution_circuit(beta);
        Matrix u = circuit_unitary(c);
        Matrix us = oracle::expmi(oracle::pstr("XXXX"), beta / 2);
        Matrix expected = Eigen::kroneckerProduct(Matrix::Identity(2, 2), us).eval();
        EXPECT_LT(phase_distance(u.block(16, 16, 16, 16), us), 1e-9);
        Matrix rho = oracle::with_ancilla(oracle::random_state(4, rng));
        Matrix out = u * rho * u.adjoint();
        EXPECT_LT(oracle::max_abs(out - expected * rho * expected.adjoint()), 1e-9) << beta;
        EXPECT_NEAR(out.bottomRightCorner(16, 16).trace().real(), 1.0, 1e-9);
    }
    EXPECT_THROW(four_body_evolution_circuit(std::nan("")), std::invalid_argument);
}

// ---------------------------------------------------------- Bell cooling

TEST(BellCooling, CircuitChannelIsTheIdealPump) {
    for (BellStabilizer s : {BellStabilizer::XX, BellStabilizer::YY}) {
        for (double p : {0.0, 0.3, 0.5, 1.0}) {
            KrausChannel seq = channel_from_circuit(bell_cooling_circuit(s, p), basis_state("1"));
            EXPECT_NEAR(jamiolkowski_fidelity(seq, ideal_bell_pump(s, p)), 1.0, 1e-9) << p;
        }
    }
}

TEST(BellCooling, ZeroProbabilityPreservesStabilizers) {
    std::mt19937_64 rng(5);
    Circuit c = bell_cooling_circuit(BellStabilizer::XX, 0.0);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix rho = oracle::random_state(2, rng);
        Matrix out = through(c, rho);
        for (const char *label : {"XX", "YY", "ZZ"}) {
            EXPECT_NEAR(oracle::ev(out, oracle::pstr(label)), oracle::ev(rho, oracle::pstr(label)), 1e-9);
        }
    }
}

TEST(BellCooling, TwoDeterministicMapsPrepareSinglet) {
    Matrix sys = through(bell_cooling_circuit(BellStabilizer::XX, 1.0), oracle::mixed(2));
    sys = through(bell_cooling_circuit(BellStabilizer::YY, 1.0), sys);
    Matrix psi_minus = oracle::proj((oracle::ket("01") - oracle::ket("10")) / std::sqrt(2.0));
    EXPECT_NEAR((sys * psi_minus).trace().real(), 1.0, 1e-9);
}

TEST(BellCooling, GateBudgetPerMap) {
    GateCounts c = count_gates(bell_cooling_circuit(BellStabilizer::XX, 0.5));
    EXPECT_EQ(c.entangling, 4u);
    EXPECT_EQ(c.collective, 2u);
    EXPECT_EQ(c.single_qubit, 3u);
    EXPECT_EQ(c.dissipative, 1u);
    EXPECT_THROW(bell_cooling_circuit(BellStabilizer::XX, -0.1), std::invalid_argument);
    EXPECT_THROW(bell_cooling_circuit(BellStabilizer::XX, 1.1), std::invalid_argument);
}

TEST(RunCircuit, BoxCircuitReproducesApplyChannel) {
    KrausChannel ideal = ideal_bell_pump(BellStabilizer::XX, 1.0);
    Matrix seq = through(bell_cooling_circuit(BellStabilizer::XX, 1.0), oracle::mixed(2));
    DensityMatrix direct = apply_channel(ideal, fully_mixed(2));
    EXPECT_LT(oracle::max_abs(seq - direct.data()), 1e-9);
}

}  // namespace
}  // namespace openqs
