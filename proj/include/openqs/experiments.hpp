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

#ifndef OPENQS_EXPERIMENTS_HPP
#define OPENQS_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "openqs/sequences.hpp"

namespace openqs {

using MetaValue = std::variant<bool, std::int64_t, double, std::string, std::vector<std::int64_t>, std::vector<double>>;
using Counts = std::map<std::string, std::uint64_t>;

/// One snapshot of a protocol run.
struct StepEntry {
    std::string label;
    std::map<std::string, double> expectations;  // keyed by stabilizer label, e.g. "Z1Z2"
    std::map<std::string, double> populations;   // keyed by state name, e.g. "Psi-" or "0000"
    std::optional<double> fidelity;               // to the protocol's target state
    std::optional<Counts> counts;                 // keyed "Z:0101" / "X:0101"

    bool operator==(const StepEntry &) const = default;
};

struct ExperimentRecord {
    std::string protocol;
    std::map<std::string, MetaValue> metadata;
    std::vector<StepEntry> steps;

    /// Throws InvariantViolation when an expectation leaves [-1, 1] or a
    /// population or fidelity leaves [0, 1].
    void validate() const;

    bool operator==(const ExperimentRecord &) const = default;
};

/// Which model of a map a runner applies.
enum class Path : unsigned char {
    Sequence,  // channel induced by the transcribed pulse sequence
    Analytic,  // closed-form stabilizer pumping channel
};

inline constexpr std::uint64_t kDefaultSeed = 1234567;

struct RunOptions {
    Path path = Path::Sequence;
    std::uint64_t shots = 0;  // 0 records exact values only
    std::uint64_t seed = kDefaultSeed;
    bool include_optional_blue = true;
};

/// Label of a stabilizer with 1-based system qubit numbers, e.g. "X1X2X3X4".
std::string stabilizer_label(const PauliString &s);

ExperimentRecord run_bell_cooling(double p, int cycles, bool probe_half_cycles = true, const RunOptions &opts = {});

/// `pump_sign` applies to steps 2-4; -1 reproduces the excited-state protocol.
ExperimentRecord run_ghz_pumping(const RunOptions &opts = {}, int pump_sign = +1);

/// Red operations follow `schedule` (one system qubit per step); an empty
/// schedule keeps them on qubit 4.
ExperimentRecord run_repeated_x_pumping(double p, int steps, const std::vector<std::size_t> &schedule = {},
                                        const RunOptions &opts = {});

ExperimentRecord run_anyon_pushing(const RunOptions &opts = {});

ExperimentRecord run_excited_pumping(const RunOptions &opts = {});

ExperimentRecord run_four_body(const std::vector<double> &beta_grid, const RunOptions &opts = {});

/// Runs a parsed circuit `repetitions` times on ancilla |1> (x) initial, with an
/// ancilla reset after each pass, recording neighbouring ZZ and the all-X stabilizer.
ExperimentRecord run_custom_sequence(const Circuit &circ, const DensityMatrix &initial, int repetitions,
                                     const RunOptions &opts = {});

struct QndBranch {
    double probability = 0.0;                // p^m of this ancilla outcome
    std::optional<DensityMatrix> post_state;  // absent when the outcome has probability 0
    double in_eigenspace = 0.0;               // conditional p^out of the matching eigenspace
};

struct QndReport {
    double p_in_plus = 0.0;
    double p_in_minus = 0.0;
    double p_out_plus = 0.0;
    double p_out_minus = 0.0;
    double n_plus = 0.0;  // Tr(P+ rho P+)
    double n_minus = 0.0;
    QndBranch outcome0;  // ancilla |0>, paired with the +1 eigenspace
    QndBranch outcome1;  // ancilla |1>, paired with the -1 eigenspace
    double f_m = 0.0;
    double f_qnd = 0.0;
    double f_qsp = 0.0;
    DensityMatrix output;  // unconditional system output

    ExperimentRecord to_record() const;
};

QndReport run_qnd(const DensityMatrix &input, const RunOptions &opts = {});

enum class MeasurementBasis : unsigned char { Z, X };

/// Multinomial draw of `shots` outcomes of a product-basis measurement.
/// Outcome keys are bit strings, qubit 0 first; only observed outcomes appear.
Counts sample_shots(const DensityMatrix &rho, MeasurementBasis basis, std::uint64_t shots, std::uint64_t seed);
Counts sample_shots(const DensityMatrix &rho, MeasurementBasis basis, std::uint64_t shots, std::mt19937_64 &rng);

}  // namespace openqs

#endif
