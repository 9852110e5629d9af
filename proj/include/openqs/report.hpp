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

#ifndef OPENQS_REPORT_HPP
#define OPENQS_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "openqs/experiments.hpp"

namespace openqs {

enum class OutputFormat : unsigned char { Json, Csv };

/// "json" or "csv"; anything else throws std::invalid_argument.
OutputFormat parse_format(std::string_view name);

/// Serializes a validated record. JSON is one object with keys protocol,
/// metadata and steps; CSV has a header row and one row per step with
/// lexicographically sorted columns and 12 significant digits.
std::string emit(const ExperimentRecord &record, OutputFormat format);

/// Several records, e.g. a parameter sweep. JSON gives an array in input
/// order; CSV gives one table with a leading `sweep` column taken from
/// `sweep_values` (one per record).
std::string emit_many(const std::vector<ExperimentRecord> &records, OutputFormat format,
                      const std::vector<double> &sweep_values);

/// Inverse of emit(record, Json).
ExperimentRecord parse_record_json(std::string_view text);

}  // namespace openqs

#endif
