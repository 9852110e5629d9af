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

#ifndef OPENQS_SEQUENCES_HPP
#define OPENQS_SEQUENCES_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "openqs/channels.hpp"
#include "openqs/circuit.hpp"

namespace openqs {

/// Build-time choices for a transcribed pulse sequence.
///
/// `include_optional_blue` keeps the operations that may be dropped between
/// consecutive maps, `red_qubit` moves retargetable phase shifts to another
/// system qubit, `sign = -1` flips every red phase shift (pumping into the
/// opposite eigenspace) and `p` binds the symbolic probability scale.
struct SequenceVariant {
    bool include_optional_blue = true;
    std::optional<std::size_t> red_qubit;
    int sign = +1;
    double p = 1.0;

    /// Throws std::invalid_argument on red_qubit outside 1..4, sign not +-1, or p outside [0, 1].
    void validate() const;
};

/// Error raised for text that does not follow the sequence grammar.
class SequenceParseError : public std::invalid_argument {
   public:
    SequenceParseError(const std::string &what, std::size_t line, std::string token);

    std::size_t line() const { return line_; }
    const std::string &token() const { return token_; }

   private:
    std::size_t line_;
    std::string token_;
};

enum class Generator : unsigned char { X, Y, XSquared, YSquared, Z };

/// One parsed token with its angle still symbolic in p.
struct SequenceToken {
    Generator generator = Generator::X;
    std::size_t target = 0;  // Z only
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    double angle = 0.0;  // radians, before the optional p factor
    bool scaled_by_p = false;
    bool blue = false;
    bool red = false;
    std::optional<std::size_t> red_anchor;  // the i in [red:i]
    std::size_t line = 0;
};

/// Tokens in listing order.
///
/// Grammar: whitespace-separated `U_<gen>(<angle>)` tokens, gen one of X, Y,
/// X^2 (or X²), Y^2, Z_i (or Z with a subscript digit), optionally braced and
/// optionally followed by `^{(a,b)}` to restrict the gate to two ions. The
/// angle is a signed rational multiple of π (`pi` also accepted), optionally
/// times `p`. `#` starts a comment. Annotations `[blue]`, `[red]` and
/// `[red:i]` prefix a token.
std::vector<SequenceToken> tokenize_sequence(std::string_view text);

/// Binds the variant and returns a circuit in application order.
///
/// Listings are operator products, so the last token is applied first.
Circuit bind_sequence(const std::vector<SequenceToken> &tokens, const SequenceVariant &variant,
                      std::size_t n_qubits = 5);

Circuit parse_sequence(std::string_view text, const SequenceVariant &variant = {}, std::size_t n_qubits = 5);

/// Names of the listings compiled into the library.
std::vector<std::string> builtin_sequence_names();

/// Text of a compiled-in listing; throws std::invalid_argument for unknown names.
std::string_view builtin_sequence(std::string_view name);

enum class BellStabilizer : unsigned char { XX, YY };

Circuit bell_cooling_circuit(BellStabilizer stab, double p);

/// GHZ cooling step 1..4, terminated by an ancilla reset.
Circuit ghz_pump_step(int step, const SequenceVariant &variant = {});

/// Repeated X1X2X3X4 pump; red operations default to qubit 4.
Circuit optimized_x_pump_circuit(const SequenceVariant &variant = {});

Circuit qnd_mapping_circuit();

/// exp(-i beta/2 X1X2X3X4) on the system with the ancilla returned to |1>.
Circuit four_body_evolution_circuit(double beta);

/// sin^2(p pi/2): the pump probability realized by a `× p`-scaled listing.
double effective_pump_probability(double p);

// Ideal counterparts on the system register alone.

KrausChannel ideal_bell_pump(BellStabilizer stab, double p);
KrausChannel ideal_ghz_step(int step, int sign = +1, double p = 1.0);
KrausChannel ideal_optimized_x_pump(double p, std::size_t red_qubit = 4);

/// M = -(i/sqrt2)(X0+Y0) (x) P+ + (1/sqrt2)(1 - iZ0) (x) P-, P+- projectors on X1X2X3X4.
Matrix ideal_qnd_unitary();

/// Stabilizer pumped by GHZ step 1..4 (Z1Z2, Z2Z3, Z3Z4, X1X2X3X4 on 4 qubits).
PauliString ghz_step_stabilizer(int step);

}  // namespace openqs

#endif
