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

#include "openqs/qcore.hpp"
#include "oracle.hpp"

namespace openqs {
namespace {

constexpr double kTol = 1e-12;

PauliString ps(std::string_view s) { return PauliString::parse(s); }

TEST(DensityMatrix, AcceptsValidStates) {
    EXPECT_NO_THROW(DensityMatrix(2, oracle::mixed(2)));
    EXPECT_NO_THROW(DensityMatrix(basis_state("0101")));
}

TEST(DensityMatrix, RejectsBrokenInvariants) {
    Matrix m = oracle::mixed(1);
    m(0, 0) = 0.6;
    EXPECT_THROW(DensityMatrix(1, m), InvariantViolation);  // trace 1.1

    Matrix h = oracle::mixed(1);
    h(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix(1, h), InvariantViolation);  // not Hermitian

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix(1, neg), InvariantViolation);  // negative eigenvalue

    EXPECT_THROW(DensityMatrix(2, oracle::mixed(1)), std::invalid_argument);
}

TEST(DensityMatrix, ToleratesRoundoff) {
    Matrix m = oracle::mixed(1);
    m(0, 0) += 1e-11;
    EXPECT_NO_THROW(DensityMatrix(1, m));
}

TEST(PureState, RequiresNormalization) {
    Vector v = Vector::Ones(2);
    EXPECT_THROW(PureState(1, v), InvariantViolation);
    EXPECT_NO_THROW(PureState(1, v / std::sqrt(2.0)));
}

TEST(BasisState, Amplitudes) {
    PureState zero = basis_state("0");
    EXPECT_NEAR(std::abs(zero[0] - 1.0), 0.0, kTol);
    EXPECT_NEAR(std::abs(zero[1]), 0.0, kTol);
    PureState three = basis_state("11");
    EXPECT_NEAR(std::abs(three[3] - 1.0), 0.0, kTol);
    EXPECT_THROW(basis_state(""), std::invalid_argument);
    EXPECT_THROW(basis_state("012"), std::invalid_argument);
}

TEST(BasisState, AnyonConfigurationStabilizers) {
    DensityMatrix rho(basis_state("0111"));
    EXPECT_NEAR(expectation(rho, ps("ZZII")), -1.0, kTol);
    EXPECT_NEAR(expectation(rho, ps("IZZI")), 1.0, kTol);
    EXPECT_NEAR(expectation(rho, ps("IIZZ")), 1.0, kTol);
    EXPECT_NEAR(expectation(rho, ps("ZIIZ")), -1.0, kTol);
    EXPECT_NEAR(expectation(rho, ps("XXXX")), 0.0, kTol);
}

TEST(FullyMixed, SmallCases) {
    EXPECT_LT(oracle::max_abs(fully_mixed(1).data() - oracle::mixed(1)), kTol);
    auto pops = bell_populations(fully_mixed(2));
    for (double v : pops) {
        EXPECT_NEAR(v, 0.25, kTol);
    }
    DensityMatrix m4 = fully_mixed(4);
    for (const char *s : {"ZZII", "IZZI", "IIZZ", "ZIIZ", "XXXX"}) {
        EXPECT_NEAR(expectation(m4, ps(s)), 0.0, kTol) << s;
    }
    EXPECT_THROW(fully_mixed(0), std::invalid_argument);
}

TEST(Tensor, Examples) {
    DensityMatrix one(basis_state("1"));
    Matrix expect = Matrix::Zero(8, 8);
    for (int i = 4; i < 8; ++i) {
        expect(i, i) = 0.25;
    }
    EXPECT_LT(oracle::max_abs(tensor(one, fully_mixed(2)).data() - expect), kTol);
    EXPECT_LT(oracle::max_abs(tensor(fully_mixed(1), fully_mixed(1)).data() - oracle::mixed(2)), kTol);
    DensityMatrix z(basis_state("0"));
    EXPECT_LT(oracle::max_abs(tensor(z, z).data() - oracle::proj(oracle::ket("00"))), kTol);
}

TEST(PartialTrace, BellMarginalsAreMixed) {
    DensityMatrix phi(bell_state(Bell::PhiPlus));
    EXPECT_LT(oracle::max_abs(partial_trace(phi, {0}).data() - oracle::mixed(1)), kTol);
    EXPECT_LT(oracle::max_abs(partial_trace(phi, {1}).data() - oracle::mixed(1)), kTol);
}

TEST(PartialTrace, RecoversFactors) {
    std::mt19937_64 rng(7);
    DensityMatrix a(2, oracle::random_state(2, rng));
    DensityMatrix b(1, oracle::random_state(1, rng));
    DensityMatrix ab = tensor(a, b);
    EXPECT_LT(oracle::max_abs(partial_trace(ab, {0, 1}).data() - a.data()), kTol);
    EXPECT_LT(oracle::max_abs(partial_trace(ab, {2}).data() - b.data()), kTol);
    DensityMatrix ba = tensor(b, a);
    EXPECT_LT(oracle::max_abs(partial_trace(ba, {1, 2}).data() - a.data()), kTol);
}

TEST(PartialTrace, KeptQubitsStayInRegisterOrder) {
    DensityMatrix rho(basis_state("011"));
    EXPECT_NEAR(partial_trace(rho, {2, 0}).population(1), 1.0, kTol);  // |01> on qubits (0, 2)
}

TEST(PartialTrace, Errors) {
    DensityMatrix rho = fully_mixed(2);
    std::vector<std::size_t> none;
    EXPECT_THROW(partial_trace(rho, none), std::invalid_argument);
    EXPECT_THROW(partial_trace(rho, {0, 0}), std::invalid_argument);
    EXPECT_THROW(partial_trace(rho, {2}), std::invalid_argument);
}

TEST(Expectation, CatStateAndErrors) {
    DensityMatrix ghz(cat_state("0000", "1111"));
    EXPECT_NEAR(expectation(ghz, ps("XXXX")), 1.0, kTol);
    EXPECT_NEAR(expectation(ghz, ps("-XXXX")), -1.0, kTol);
    EXPECT_THROW(expectation(ghz, ps("XX")), std::invalid_argument);
}

TEST(Expectation, MatchesTraceFormula) {
    std::mt19937_64 rng(11);
    Matrix r = oracle::random_state(3, rng);
    DensityMatrix rho(3, r);
    for (const char *s : {"XYZ", "ZIZ", "YYI", "IXI"}) {
        EXPECT_NEAR(expectation(rho, ps(s)), oracle::ev(r, oracle::pstr(s)), 1e-12) << s;
    }
}

TEST(Fidelity, Examples) {
    PureState ghz = cat_state("0000", "1111");
    EXPECT_NEAR(fidelity(DensityMatrix(ghz), ghz), 1.0, kTol);
    EXPECT_NEAR(fidelity(fully_mixed(4), ghz), 1.0 / 16.0, kTol);
    EXPECT_THROW(fidelity(fully_mixed(2), ghz), std::invalid_argument);
}

TEST(BellStates, PopulationsAndNames) {
    auto pops = bell_populations(DensityMatrix(bell_state(Bell::PsiMinus)));
    EXPECT_NEAR(pops[0], 0.0, kTol);
    EXPECT_NEAR(pops[1], 0.0, kTol);
    EXPECT_NEAR(pops[2], 0.0, kTol);
    EXPECT_NEAR(pops[3], 1.0, kTol);
    EXPECT_EQ(bell_name(Bell::PsiMinus), "Psi-");
    EXPECT_EQ(bell_name(Bell::PhiPlus), "Phi+");
    // Psi- is the -1 eigenstate of XX, YY and ZZ.
    DensityMatrix psi(bell_state(Bell::PsiMinus));
    for (const char *s : {"XX", "YY", "ZZ"}) {
        EXPECT_NEAR(expectation(psi, ps(s)), -1.0, kTol);
    }
    EXPECT_THROW(bell_populations(fully_mixed(3)), std::invalid_argument);
}

TEST(PauliString, AlgebraAndLabels) {
    PauliString a = ps("XXXX");
    PauliString b = ps("ZZII");
    PauliString c = ps("ZIII");
    EXPECT_TRUE(a.commutes_with(b));
    EXPECT_FALSE(a.commutes_with(c));
    EXPECT_EQ(a.negated().label(), "-XXXX");
    EXPECT_EQ(PauliString::on(4, Pauli::Z, {1, 2}).label(), "IZZI");
    EXPECT_EQ(ps("XX").embedded(5, 1).label(), "IXXII");
    EXPECT_LT(oracle::max_abs(ps("-XYZ").matrix() + oracle::pstr("XYZ")), kTol);
    EXPECT_THROW(ps("XQ"), std::invalid_argument);
    EXPECT_THROW(PauliString::on(2, Pauli::X, {2}), std::invalid_argument);
}

TEST(Projector, IsIdempotentAndSplitsIdentity) {
    Projector plus(ps("XXXX"), +1);
    Projector minus(ps("XXXX"), -1);
    Matrix p = plus.matrix();
    EXPECT_LT(oracle::max_abs(p * p - p), kTol);
    EXPECT_LT(oracle::max_abs(p + minus.matrix() - Matrix::Identity(16, 16)), kTol);
    EXPECT_THROW(Projector(ps("X"), 0), std::invalid_argument);
}

TEST(TraceDistance, Examples) {
    Matrix a = oracle::proj(oracle::ket("0"));
    Matrix b = oracle::proj(oracle::ket("1"));
    EXPECT_NEAR(trace_distance(a, b), 1.0, kTol);
    EXPECT_NEAR(trace_distance(a, a), 0.0, kTol);
    EXPECT_NEAR(trace_distance(a, oracle::mixed(1)), 0.5, kTol);
}

TEST(CatState, Validation) {
    EXPECT_THROW(cat_state("00", "00"), std::invalid_argument);
    EXPECT_THROW(cat_state("00", "111"), std::invalid_argument);
    PureState odd = cat_state("0010", "1101", -1);
    EXPECT_NEAR(odd[0b0010].real(), 1.0 / std::sqrt(2.0), kTol);
    EXPECT_NEAR(odd[0b1101].real(), -1.0 / std::sqrt(2.0), kTol);
}

}  // namespace
}  // namespace openqs
