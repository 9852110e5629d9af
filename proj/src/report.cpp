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

#include "openqs/report.hpp"

#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

namespace openqs {

namespace {

using nlohmann::json;

json meta_to_json(const MetaValue &v) {
    return std::visit([](const auto &x) { return json(x); }, v);
}

MetaValue meta_from_json(const json &j, const std::string &key) {
    if (j.is_boolean()) {
        return j.get<bool>();
    }
    if (j.is_number_integer()) {
        return j.get<std::int64_t>();
    }
    if (j.is_number_float()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    if (j.is_array()) {
        bool all_int = !j.empty();
        for (const json &e : j) {
            if (!e.is_number()) {
                throw std::invalid_argument("metadata '" + key + "': arrays must hold numbers");
            }
            all_int = all_int && e.is_number_integer();
        }
        if (all_int) {
            return j.get<std::vector<std::int64_t>>();
        }
        return j.get<std::vector<double>>();
    }
    throw std::invalid_argument("metadata '" + key + "' has an unsupported type");
}

json record_to_json(const ExperimentRecord &r) {
    json steps = json::array();
    for (const StepEntry &s : r.steps) {
        json e = {
            {"label", s.label},
            {"expectations", s.expectations},
            {"populations", s.populations},
            {"fidelity", s.fidelity ? json(*s.fidelity) : json(nullptr)},
        };
        if (s.counts) {
            e["counts"] = *s.counts;
        }
        steps.push_back(std::move(e));
    }
    json meta = json::object();
    for (const auto &[k, v] : r.metadata) {
        meta[k] = meta_to_json(v);
    }
    return {{"protocol", r.protocol}, {"metadata", std::move(meta)}, {"steps", std::move(steps)}};
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_quote(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

using Row = std::map<std::string, std::string>;

Row step_row(const StepEntry &s) {
    Row row;
    row["label"] = csv_quote(s.label);
    row["fidelity"] = s.fidelity ? format_double(*s.fidelity) : "";
    for (const auto &[k, v] : s.expectations) {
        row["exp:" + k] = format_double(v);
    }
    for (const auto &[k, v] : s.populations) {
        row["pop:" + k] = format_double(v);
    }
    if (s.counts) {
        for (const auto &[k, v] : *s.counts) {
            row["count:" + k] = std::to_string(v);
        }
    }
    return row;
}

std::string rows_to_csv(const std::vector<Row> &rows) {
    std::set<std::string> columns;
    for (const Row &r : rows) {
        for (const auto &[k, v] : r) {
            columns.insert(k);
        }
    }
    std::string out;
    bool first = true;
    for (const std::string &c : columns) {
        out += (first ? "" : ",") + csv_quote(c);
        first = false;
    }
    out += '\n';
    for (const Row &r : rows) {
        first = true;
        for (const std::string &c : columns) {
            auto it = r.find(c);
            out += (first ? "" : ",") + (it == r.end() ? std::string() : it->second);
            first = false;
        }
        out += '\n';
    }
    return out;
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
    if (name == "json") {
        return OutputFormat::Json;
    }
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    throw std::invalid_argument("unsupported output format '" + std::string(name) + "' (use json or csv)");
}

std::string emit(const ExperimentRecord &record, OutputFormat format) {
    record.validate();
    if (format == OutputFormat::Json) {
        return record_to_json(record).dump(2) + "\n";
    }
    std::vector<Row> rows;
    for (const StepEntry &s : record.steps) {
        rows.push_back(step_row(s));
    }
    return rows_to_csv(rows);
}

std::string emit_many(const std::vector<ExperimentRecord> &records, OutputFormat format,
                      const std::vector<double> &sweep_values) {
    if (sweep_values.size() != records.size()) {
        throw std::invalid_argument("emit_many needs one sweep value per record");
    }
    for (const ExperimentRecord &r : records) {
        r.validate();
    }
    if (format == OutputFormat::Json) {
        json all = json::array();
        for (const ExperimentRecord &r : records) {
            all.push_back(record_to_json(r));
        }
        return all.dump(2) + "\n";
    }
    std::vector<Row> rows;
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const StepEntry &s : records[i].steps) {
            Row row = step_row(s);
            row["sweep"] = format_double(sweep_values[i]);
            rows.push_back(std::move(row));
        }
    }
    return rows_to_csv(rows);
}

ExperimentRecord parse_record_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("record is not valid JSON: ") + e.what());
    }
    try {
        ExperimentRecord r;
        r.protocol = j.at("protocol").get<std::string>();
        for (const auto &[k, v] : j.at("metadata").items()) {
            r.metadata[k] = meta_from_json(v, k);
        }
        for (const json &e : j.at("steps")) {
            StepEntry s;
            s.label = e.at("label").get<std::string>();
            s.expectations = e.at("expectations").get<std::map<std::string, double>>();
            s.populations = e.at("populations").get<std::map<std::string, double>>();
            if (!e.at("fidelity").is_null()) {
                s.fidelity = e.at("fidelity").get<double>();
            }
            if (e.contains("counts")) {
                s.counts = e.at("counts").get<Counts>();
            }
            r.steps.push_back(std::move(s));
        }
        r.validate();
        return r;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("record does not match the schema: ") + e.what());
    }
}

}  // namespace openqs
