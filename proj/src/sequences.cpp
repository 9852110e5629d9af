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

#include "openqs/sequences.hpp"

#include <cmath>
#include <numbers>
#include <regex>

#include <unsupported/Eigen/KroneckerProduct>

#include "builtin_sequences.hpp"

namespace openqs {

namespace {

constexpr double kPi = std::numbers::pi;

// Rewrites the typeset forms (unicode minus, π, ², subscripts, braces) to ASCII
// and drops whitespace so one regex covers every accepted spelling.
std::string normalize(std::string_view raw) {
    static const std::pair<std::string_view, std::string_view> kReplacements[] = {
        {"−", "-"}, {"×", "*"}, {"·", "*"}, {"π", "pi"}, {"²", "^2"},
        {"₀", "0"}, {"₁", "1"}, {"₂", "2"}, {"₃", "3"},  {"₄", "4"},
        {"₅", "5"}, {"₆", "6"}, {"₇", "7"}, {"₈", "8"},  {"₉", "9"},
    };
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        bool replaced = false;
        for (const auto &[from, to] : kReplacements) {
            if (raw.substr(i, from.size()) == from) {
                out += to;
                i += from.size();
                replaced = true;
                break;
            }
        }
        if (replaced) {
            continue;
        }
        char c = raw[i++];
        if (c == '{' || c == '}' || c == ' ' || c == '\t') {
            continue;
        }
        out += c;
    }
    return out;
}

struct Angle {
    double radians;
    bool scaled_by_p;
};

Angle parse_angle(const std::string &text, std::size_t line, const std::string &token) {
    static const std::regex kAngle(R"(^([+-]?)(?:([0-9]+)\*?)?(pi)?(?:/([0-9]+))?(\*p)?$)");
    std::smatch m;
    if (text.empty() || !std::regex_match(text, m, kAngle)) {
        throw SequenceParseError("malformed angle '" + text + "'", line, token);
    }
    const bool has_pi = m[3].matched;
    const bool has_num = m[2].matched;
    if (!has_pi && !has_num) {
        throw SequenceParseError("malformed angle '" + text + "'", line, token);
    }
    double num = has_num ? std::stod(m[2].str()) : 1.0;
    if (!has_pi && num != 0.0) {
        throw SequenceParseError("angle must be a rational multiple of pi: '" + text + "'", line, token);
    }
    double den = 1.0;
    if (m[4].matched) {
        den = std::stod(m[4].str());
        if (den == 0.0) {
            throw SequenceParseError("zero denominator in angle '" + text + "'", line, token);
        }
    }
    double value = num / den * (has_pi ? kPi : 0.0);
    if (m[1].str() == "-") {
        value = -value;
    }
    return {value, m[5].matched};
}

void apply_annotation(const std::string &ann, SequenceToken &tok, std::size_t line) {
    if (ann == "blue") {
        tok.blue = true;
        return;
    }
    if (ann == "red") {
        tok.red = true;
        return;
    }
    if (ann.rfind("red:", 0) == 0) {
        std::string digits = ann.substr(4);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw SequenceParseError("malformed annotation [" + ann + "]", line, ann);
        }
        tok.red = true;
        tok.red_anchor = static_cast<std::size_t>(std::stoul(digits));
        return;
    }
    throw SequenceParseError("unknown annotation [" + ann + "]", line, ann);
}

SequenceToken parse_gate(const std::string &raw, SequenceToken tok, std::size_t line) {
    static const std::regex kGate(R"(^U_(X\^2|Y\^2|X|Y|Z_?([0-9]+))(?:\^\(([0-9]+),([0-9]+)\))?\(([^()]*)\)$)");
    std::string text = normalize(raw);
    std::smatch m;
    if (!std::regex_match(text, m, kGate)) {
        if (text.rfind("U_", 0) != 0 || text.find('(') == std::string::npos) {
            throw SequenceParseError("unrecognized token", line, raw);
        }
        throw SequenceParseError("unknown generator in '" + raw + "'", line, raw);
    }
    const std::string gen = m[1].str();
    if (gen == "X") {
        tok.generator = Generator::X;
    } else if (gen == "Y") {
        tok.generator = Generator::Y;
    } else if (gen == "X^2") {
        tok.generator = Generator::XSquared;
    } else if (gen == "Y^2") {
        tok.generator = Generator::YSquared;
    } else {
        tok.generator = Generator::Z;
        tok.target = static_cast<std::size_t>(std::stoul(m[2].str()));
    }
    if (m[3].matched) {
        if (tok.generator == Generator::Z) {
            throw SequenceParseError("single-ion rotations take no ion pair", line, raw);
        }
        auto a = static_cast<std::size_t>(std::stoul(m[3].str()));
        auto b = static_cast<std::size_t>(std::stoul(m[4].str()));
        if (a == b) {
            throw SequenceParseError("ion pair must name two distinct ions", line, raw);
        }
        tok.pair = std::make_pair(a, b);
    }
    Angle angle = parse_angle(m[5].str(), line, raw);
    tok.angle = angle.radians;
    tok.scaled_by_p = angle.scaled_by_p;
    if (tok.red_anchor) {
        if (tok.generator != Generator::Z) {
            throw SequenceParseError("[red:i] applies to single-ion phase shifts only", line, raw);
        }
        if (*tok.red_anchor != tok.target) {
            throw SequenceParseError("[red:" + std::to_string(*tok.red_anchor) + "] does not match the token's ion " +
                                         std::to_string(tok.target),
                                     line, raw);
        }
    }
    tok.line = line;
    return tok;
}

// Splits a line at whitespace outside parentheses.
std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : line) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            if (--depth < 0) {
                throw SequenceParseError("unbalanced ')'", line_no, std::string(line));
            }
        }
        if (depth == 0 && (c == ' ' || c == '\t' || c == '\r')) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
            continue;
        }
        cur += c;
    }
    if (depth != 0) {
        throw SequenceParseError("unbalanced '('", line_no, std::string(line));
    }
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

}  // namespace

void SequenceVariant::validate() const {
    if (red_qubit && (*red_qubit < 1 || *red_qubit > 4)) {
        throw std::invalid_argument("red_qubit must be one of the system qubits 1..4");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sequence sign must be +1 or -1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
}

SequenceParseError::SequenceParseError(const std::string &what, std::size_t line, std::string token)
    : std::invalid_argument("line " + std::to_string(line) + ": " + what + (token.empty() ? "" : " in '" + token + "'")),
      line_(line),
      token_(std::move(token)) {}

std::vector<SequenceToken> tokenize_sequence(std::string_view text) {
    std::vector<SequenceToken> tokens;
    SequenceToken pending;
    bool have_pending_annotation = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        for (std::string word : split_line(line, line_no)) {
            while (!word.empty() && word.front() == '[') {
                std::size_t close = word.find(']');
                if (close == std::string::npos) {
                    throw SequenceParseError("unterminated annotation", line_no, word);
                }
                apply_annotation(word.substr(1, close - 1), pending, line_no);
                have_pending_annotation = true;
                word.erase(0, close + 1);
            }
            if (word.empty()) {
                continue;
            }
            tokens.push_back(parse_gate(word, pending, line_no));
            pending = SequenceToken{};
            have_pending_annotation = false;
        }
        if (end == text.size()) {
            break;
        }
    }
    if (have_pending_annotation) {
        throw SequenceParseError("annotation without a following operation", line_no, "");
    }
    return tokens;
}

Circuit bind_sequence(const std::vector<SequenceToken> &tokens, const SequenceVariant &variant, std::size_t n_qubits) {
    variant.validate();
    Circuit circ(n_qubits);
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
        const SequenceToken &tok = *it;
        if (tok.blue && !variant.include_optional_blue) {
            continue;
        }
        double theta = tok.angle;
        if (tok.scaled_by_p) {
            theta *= variant.p;
        }
        if (tok.red && variant.sign < 0) {
            theta = -theta;
        }
        std::vector<std::size_t> participants;
        if (tok.pair) {
            participants = {tok.pair->first, tok.pair->second};
        }
        try {
            switch (tok.generator) {
                case Generator::X:
                    circ.append(CollectiveRot{Axis::X, theta, participants});
                    break;
                case Generator::Y:
                    circ.append(CollectiveRot{Axis::Y, theta, participants});
                    break;
                case Generator::XSquared:
                    circ.append(MS{Axis::X, theta, participants});
                    break;
                case Generator::YSquared:
                    circ.append(MS{Axis::Y, theta, participants});
                    break;
                case Generator::Z: {
                    std::size_t target = tok.target;
                    if (tok.red_anchor && variant.red_qubit) {
                        target = *variant.red_qubit;
                    }
                    circ.append(SingleZ{target, theta});
                    break;
                }
            }
        } catch (const SequenceParseError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw SequenceParseError(e.what(), tok.line, "");
        }
    }
    return circ;
}

Circuit parse_sequence(std::string_view text, const SequenceVariant &variant, std::size_t n_qubits) {
    return bind_sequence(tokenize_sequence(text), variant, n_qubits);
}

std::vector<std::string> builtin_sequence_names() {
    std::vector<std::string> names;
    for (const auto &entry : detail::kBuiltinSequences) {
        names.emplace_back(entry.name);
    }
    return names;
}

std::string_view builtin_sequence(std::string_view name) {
    for (const auto &entry : detail::kBuiltinSequences) {
        if (entry.name == name) {
            return entry.text;
        }
    }
    throw std::invalid_argument("no built-in sequence named '" + std::string(name) + "'");
}

// ------------------------------------------------------------------ builders

Circuit bell_cooling_circuit(BellStabilizer stab, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    const Axis outer = stab == BellStabilizer::XX ? Axis::X : Axis::Y;
    const double alpha = std::asin(std::sqrt(p));
    Circuit c(3);
    c.append(MS{outer, kPi / 2, {}});
    // C(p): the two-ion gate on (0,1) is refocused from three-ion gates with
    // spin echoes on qubit 2.
    c.append(CollectiveRot{Axis::Y, -kPi / 2, {}});
    c.append(MS{Axis::X, -alpha / 2, {}});
    c.append(SingleZ{2, kPi});
    c.append(MS{Axis::X, -alpha / 2, {}});
    c.append(SingleZ{2, kPi});
    c.append(CollectiveRot{Axis::Y, kPi / 2, {}});
    c.append(SingleZ{1, -alpha});
    c.append(MS{outer, kPi / 2, {}});
    c.append(AncillaReset{});
    return c;
}

Circuit ghz_pump_step(int step, const SequenceVariant &variant) {
    if (step < 1 || step > 4) {
        throw std::invalid_argument("GHZ pumping step must be 1..4");
    }
    Circuit c = parse_sequence(builtin_sequence("ghz_step" + std::to_string(step)), variant);
    c.append(AncillaReset{});
    return c;
}

Circuit optimized_x_pump_circuit(const SequenceVariant &variant) {
    SequenceVariant v = variant;
    if (!v.red_qubit) {
        v.red_qubit = 4;
    }
    Circuit c = parse_sequence(builtin_sequence("optimized_x_pump"), v);
    c.append(AncillaReset{});
    return c;
}

Circuit qnd_mapping_circuit() { return parse_sequence(builtin_sequence("qnd_mapping")); }

Circuit four_body_evolution_circuit(double beta) {
    if (!std::isfinite(beta)) {
        throw std::invalid_argument("beta must be finite");
    }
    Circuit c(5);
    c.append(MS{Axis::X, kPi / 2, {}});
    c.append(SingleZ{0, -beta});
    c.append(MS{Axis::X, -kPi / 2, {}});
    return c;
}

double effective_pump_probability(double p) {
    double s = std::sin(p * kPi / 2);
    return s * s;
}

KrausChannel ideal_bell_pump(BellStabilizer stab, double p) {
    if (stab == BellStabilizer::XX) {
        return stabilizer_pump(PauliString::parse("XX"), -1, p, PauliString::parse("YI"));
    }
    return stabilizer_pump(PauliString::parse("YY"), -1, p, PauliString::parse("XI"));
}

PauliString ghz_step_stabilizer(int step) {
    switch (step) {
        case 1:
            return PauliString::parse("ZZII");
        case 2:
            return PauliString::parse("IZZI");
        case 3:
            return PauliString::parse("IIZZ");
        case 4:
            return PauliString::parse("XXXX");
        default:
            throw std::invalid_argument("GHZ pumping step must be 1..4");
    }
}

KrausChannel ideal_ghz_step(int step, int sign, double p) {
    static const char *kFlips[] = {"IXII", "IIXI", "IIIX", "IIIZ"};
    PauliString stab = ghz_step_stabilizer(step);
    return stabilizer_pump(stab, sign, p, PauliString::parse(kFlips[step - 1]));
}

KrausChannel ideal_optimized_x_pump(double p, std::size_t red_qubit) {
    if (red_qubit < 1 || red_qubit > 4) {
        throw std::invalid_argument("red_qubit must be one of the system qubits 1..4");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    return stabilizer_pump(PauliString::parse("XXXX"), -1, effective_pump_probability(p),
                           PauliString::on(4, Pauli::Z, {red_qubit - 1}));
}

Matrix ideal_qnd_unitary() {
    const cplx i{0.0, 1.0};
    const double r = 1.0 / std::sqrt(2.0);
    Matrix xxxx = PauliString::parse("XXXX").matrix();
    Matrix id4 = Matrix::Identity(16, 16);
    Matrix plus = (id4 + xxxx) * 0.5;
    Matrix minus = (id4 - xxxx) * 0.5;
    Matrix x0 = pauli_matrix(Pauli::X);
    Matrix y0 = pauli_matrix(Pauli::Y);
    Matrix z0 = pauli_matrix(Pauli::Z);
    Matrix id2 = Matrix::Identity(2, 2);
    Matrix a = (-i * r) * (x0 + y0);
    Matrix b = r * (id2 - i * z0);
    return Eigen::kroneckerProduct(a, plus).eval() + Eigen::kroneckerProduct(b, minus).eval();
}

}  // namespace openqs
