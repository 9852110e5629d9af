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

#ifndef OPENQS_CLI_HPP
#define OPENQS_CLI_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "openqs/report.hpp"

namespace openqs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSimulationError = 1;
inline constexpr int kExitUsage = 2;

/// Everything a single protocol run needs, after defaults are applied.
struct RunConfig {
    std::string protocol;
    double p = 1.0;
    int cycles = 1;
    int steps = 1;
    std::vector<std::size_t> schedule;
    std::vector<double> beta_grid;
    bool blue = true;
    int sign = +1;
    std::uint64_t shots = 0;
    std::uint64_t seed = kDefaultSeed;
    bool analytic = false;
    std::string input;
    std::optional<std::string> sequence_text;
    std::size_t qubits = 5;

    RunOptions options() const;
};

struct ProtocolEntry {
    std::string name;
    std::string summary;
    bool uses_p = false;
    std::function<void(RunConfig &)> apply_defaults;
    std::function<ExperimentRecord(const RunConfig &)> run;
};

/// The registered protocols, in display order.
const std::vector<ProtocolEntry> &protocol_registry();

/// "start:stop:count" with endpoints such as 0, pi, 2pi, -pi/2 or 1.25.
std::vector<double> parse_grid(const std::string &desc);

/// Angle literal: a decimal number, or a rational multiple of pi.
double parse_angle_literal(const std::string &text);

/// "1111", "0000+1111", "0011-1100" or "mixed" on `n_qubits` qubits.
DensityMatrix parse_state_spec(const std::string &desc, std::size_t n_qubits);

/// Entry point behind the `simulate` executable.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace openqs::cli

#endif
