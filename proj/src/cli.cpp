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

#include "openqs/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <numbers>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

namespace openqs::cli {

RunOptions RunConfig::options() const {
    RunOptions o;
    o.path = analytic ? Path::Analytic : Path::Sequence;
    o.shots = shots;
    o.seed = seed;
    o.include_optional_blue = blue;
    return o;
}

namespace {

ExperimentRecord run_qnd_protocol(const RunConfig &c) {
    RunOptions opts = c.options();
    ExperimentRecord rec = run_qnd(parse_state_spec(c.input.empty() ? "1111" : c.input, 4), opts).to_record();
    rec.metadata["path"] = std::string(c.analytic ? "analytic" : "sequence");
    rec.metadata["input"] = c.input.empty() ? std::string("1111") : c.input;
    rec.metadata["seed"] = static_cast<std::int64_t>(c.seed);
    rec.metadata["shots"] = static_cast<std::int64_t>(0);
    return rec;
}

ExperimentRecord run_custom_protocol(const RunConfig &c) {
    if (!c.sequence_text) {
        throw std::invalid_argument("the custom protocol needs --sequence-file");
    }
    if (c.qubits < 2) {
        throw std::invalid_argument("--qubits must count the ancilla plus at least one system qubit");
    }
    SequenceVariant v;
    v.include_optional_blue = c.blue;
    v.sign = c.sign;
    v.p = c.p;
    if (!c.schedule.empty()) {
        v.red_qubit = c.schedule.front();
    }
    Circuit circ = parse_sequence(*c.sequence_text, v, c.qubits);
    DensityMatrix initial = parse_state_spec(c.input.empty() ? "mixed" : c.input, c.qubits - 1);
    ExperimentRecord rec = run_custom_sequence(circ, initial, c.steps, c.options());
    rec.metadata["p"] = c.p;
    return rec;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) {
        out.push_back(part);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::uint64_t parse_seed(const std::string &text, const std::string &source) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument(source + " must be a non-negative integer, got '" + text + "'");
    }
    try {
        return std::stoull(text);
    } catch (const std::out_of_range &) {
        throw std::invalid_argument(source + " is out of range");
    }
}

void write_output(const std::string &text, const std::optional<std::string> &path, std::ostream &out) {
    if (!path) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::invalid_argument("cannot open output file '" + *path + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw std::invalid_argument("failed writing output file '" + *path + "'");
    }
}

}  // namespace

const std::vector<ProtocolEntry> &protocol_registry() {
    static const std::vector<ProtocolEntry> registry = {
        {"bell-cooling", "two-qubit cooling into the singlet, Bell populations per half cycle", true,
         [](RunConfig &c) {
             c.p = 0.5;
             c.cycles = 3;
         },
         [](const RunConfig &c) { return run_bell_cooling(c.p, c.cycles, true, c.options()); }},
        {"ghz-pumping", "four-step cooling of four qubits into the GHZ state", false, [](RunConfig &) {},
         [](const RunConfig &c) { return run_ghz_pumping(c.options(), c.sign); }},
        {"repeated-x-pumping", "repeated X1X2X3X4 pumping from |1111> with a red-qubit schedule", true,
         [](RunConfig &c) {
             c.p = 0.5;
             c.steps = 5;
             c.schedule = {4, 3, 2, 1, 1};
         },
         [](const RunConfig &c) { return run_repeated_x_pumping(c.p, c.steps, c.schedule, c.options()); }},
        {"anyon-pushing", "GHZ cooling cycle started from |0111>", false, [](RunConfig &) {},
         [](const RunConfig &c) { return run_anyon_pushing(c.options()); }},
        {"excited-pumping", "cooling into (|0010> - |1101>)/sqrt2", false, [](RunConfig &) {},
         [](const RunConfig &c) { return run_excited_pumping(c.options()); }},
        {"four-body", "coherent exp(-i beta/2 X1X2X3X4) evolution over a beta grid", false,
         [](RunConfig &c) { c.beta_grid = parse_grid("0:2pi:17"); },
         [](const RunConfig &c) { return run_four_body(c.beta_grid, c.options()); }},
        {"qnd", "QND measurement of X1X2X3X4 with measurement, QND and QSP fidelities", false,
         [](RunConfig &c) { c.input = "1111"; }, run_qnd_protocol},
        {"custom", "run a sequence file (--sequence-file) repeatedly with ancilla resets", true,
         [](RunConfig &) {}, run_custom_protocol},
    };
    return registry;
}

double parse_angle_literal(const std::string &raw) {
    std::string text;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw.compare(i, 2, "π") == 0) {
            text += "pi";
            ++i;
        } else if (raw[i] != ' ') {
            text += raw[i];
        }
    }
    static const std::regex kLiteral(R"(^([+-]?)([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?\*?(pi)?(?:/([0-9]*\.?[0-9]+))?$)");
    std::smatch m;
    if (text.empty() || !std::regex_match(text, m, kLiteral) || (!m[2].matched && !m[3].matched)) {
        throw std::invalid_argument("malformed angle '" + raw + "'");
    }
    double value = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (m[3].matched) {
        value *= std::numbers::pi;
    }
    if (m[4].matched) {
        double den = std::stod(m[4].str());
        if (den == 0.0) {
            throw std::invalid_argument("zero denominator in '" + raw + "'");
        }
        value /= den;
    }
    return m[1].str() == "-" ? -value : value;
}

std::vector<double> parse_grid(const std::string &desc) {
    std::vector<std::string> parts = split(desc, ':');
    if (parts.size() != 3) {
        throw std::invalid_argument("grid must look like start:stop:count, got '" + desc + "'");
    }
    double a = parse_angle_literal(parts[0]);
    double b = parse_angle_literal(parts[1]);
    if (parts[2].empty() || parts[2].find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("grid count must be a positive integer, got '" + parts[2] + "'");
    }
    long n = std::stol(parts[2]);
    if (n < 1) {
        throw std::invalid_argument("grid count must be at least 1");
    }
    std::vector<double> grid;
    for (long i = 0; i < n; ++i) {
        grid.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return grid;
}

DensityMatrix parse_state_spec(const std::string &desc, std::size_t n_qubits) {
    if (desc == "mixed") {
        return fully_mixed(n_qubits);
    }
    auto check = [&](const std::string &bits) {
        if (bits.size() != n_qubits || bits.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("state '" + desc + "' must use " + std::to_string(n_qubits) +
                                        "-bit basis labels");
        }
    };
    std::size_t op = desc.find_first_of("+-");
    if (op == std::string::npos) {
        check(desc);
        return DensityMatrix(basis_state(desc));
    }
    std::string a = desc.substr(0, op);
    std::string b = desc.substr(op + 1);
    check(a);
    check(b);
    if (a == b) {
        throw std::invalid_argument("state '" + desc + "' needs two different basis labels");
    }
    return DensityMatrix(cat_state(a, b, desc[op] == '+' ? +1 : -1));
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Ideal simulation of engineered open-system dynamics on a trapped-ion register"};
    app.set_help_flag("-h,--help", "Show usage");

    std::string protocol;
    std::optional<double> p;
    std::optional<int> cycles;
    std::optional<int> steps;
    std::optional<std::string> schedule;
    std::optional<std::string> beta_grid;
    bool blue = true;
    int sign = +1;
    std::uint64_t shots = 0;
    std::optional<std::string> seed;
    std::string format = "json";
    std::optional<std::string> output;
    bool analytic = false;
    std::optional<std::string> sequence_file;
    std::optional<std::string> sweep;
    std::optional<std::string> input;
    std::size_t qubits = 5;
    bool list = false;

    app.add_option("protocol", protocol, "Protocol to run (see --list)");
    app.add_flag("--list", list, "List the registered protocols and exit");
    app.add_option("--p", p, "Pumping probability in [0, 1]");
    app.add_option("--cycles", cycles, "Number of cooling cycles (bell-cooling)");
    app.add_option("--steps", steps, "Number of pumping steps or sequence passes");
    app.add_option("--schedule", schedule, "Comma-separated red-qubit schedule, e.g. 4,3,2,1,1");
    app.add_option("--beta-grid", beta_grid, "start:stop:count grid of angles, e.g. 0:pi:9");
    app.add_flag("--blue,!--no-blue", blue, "Keep (default) or drop the optional operations");
    app.add_option("--sign", sign, "Pump sign for the sign-annotated operations (+1 or -1)");
    app.add_option("--shots", shots, "Sample this many shots per basis and step (0 = exact only)");
    app.add_option("--seed", seed, "Random seed (overrides SIM_SEED)");
    app.add_option("--format", format, "Output format: json or csv");
    app.add_option("--output", output, "Write to this file instead of stdout");
    app.add_flag("--analytic", analytic, "Use closed-form channels instead of pulse sequences");
    app.add_option("--sequence-file", sequence_file, "Pulse sequence file for the custom protocol");
    app.add_option("--sweep", sweep, "Parameter sweep, e.g. p=0.1:1:10");
    app.add_option("--input", input, "Input state: bits, a+b / a-b cat state, or mixed");
    app.add_option("--qubits", qubits, "Register size including the ancilla (custom protocol)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (list) {
        for (const ProtocolEntry &entry : protocol_registry()) {
            out << entry.name << "\t" << entry.summary << "\n";
        }
        return kExitOk;
    }

    try {
        if (protocol.empty()) {
            throw std::invalid_argument("missing protocol; run with --list to see the choices");
        }
        const ProtocolEntry *entry = nullptr;
        for (const ProtocolEntry &e : protocol_registry()) {
            if (e.name == protocol) {
                entry = &e;
            }
        }
        if (entry == nullptr) {
            throw std::invalid_argument("unknown protocol '" + protocol + "'; run with --list to see the choices");
        }

        RunConfig config;
        config.protocol = protocol;
        entry->apply_defaults(config);
        if (const char *env = std::getenv("SIM_SEED"); env != nullptr) {
            config.seed = parse_seed(env, "SIM_SEED");
        }
        if (seed) {
            config.seed = parse_seed(*seed, "--seed");
        }
        if (p) {
            config.p = *p;
        }
        if (cycles) {
            config.cycles = *cycles;
        }
        if (steps) {
            config.steps = *steps;
            if (!schedule && config.schedule.size() != static_cast<std::size_t>(*steps)) {
                config.schedule.clear();
            }
        }
        if (schedule) {
            config.schedule.clear();
            for (const std::string &q : split(*schedule, ',')) {
                if (q.empty() || q.find_first_not_of("0123456789") != std::string::npos) {
                    throw std::invalid_argument("schedule entries must be qubit numbers, got '" + q + "'");
                }
                config.schedule.push_back(std::stoul(q));
            }
        }
        if (beta_grid) {
            config.beta_grid = parse_grid(*beta_grid);
        }
        if (sign != 1 && sign != -1) {
            throw std::invalid_argument("--sign must be +1 or -1");
        }
        config.blue = blue;
        config.sign = sign;
        config.shots = shots;
        config.analytic = analytic;
        config.qubits = qubits;
        if (input) {
            config.input = *input;
        }
        if (sequence_file) {
            std::ifstream in(*sequence_file, std::ios::binary);
            if (!in) {
                throw std::invalid_argument("cannot read sequence file '" + *sequence_file + "'");
            }
            std::stringstream buf;
            buf << in.rdbuf();
            config.sequence_text = buf.str();
        }
        const OutputFormat fmt = parse_format(format);

        std::string text;
        if (sweep) {
            std::size_t eq = sweep->find('=');
            if (eq == std::string::npos || sweep->substr(0, eq) != "p") {
                throw std::invalid_argument("--sweep supports p=start:stop:count");
            }
            if (!entry->uses_p) {
                throw std::invalid_argument("protocol '" + protocol + "' has no p parameter to sweep");
            }
            std::vector<double> values = parse_grid(sweep->substr(eq + 1));
            // Independent runs fan out; results are collected in parameter order.
            std::vector<std::future<ExperimentRecord>> jobs;
            for (double v : values) {
                RunConfig c = config;
                c.p = v;
                jobs.push_back(std::async(std::launch::async, [entry, c] { return entry->run(c); }));
            }
            std::vector<ExperimentRecord> records;
            for (auto &job : jobs) {
                records.push_back(job.get());
            }
            text = emit_many(records, fmt, values);
        } else {
            text = emit(entry->run(config), fmt);
        }
        write_output(text, output, out);
        return kExitOk;
    } catch (const InvariantViolation &e) {
        err << "simulation error: " << e.what() << "\n";
        return kExitSimulationError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "simulation error: " << e.what() << "\n";
        return kExitSimulationError;
    }
}

}  // namespace openqs::cli
