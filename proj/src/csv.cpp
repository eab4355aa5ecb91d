// Copyright 2026 The Sampriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sampriv/csv.hpp"

#include <charconv>
#include <cmath>

namespace sampriv {

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::string_view table_name) : out_(out) {
  out_ << "# sampriv-csv v1 " << table_name << "\n";
}

void CsvWriter::header(std::span<const std::string_view> columns) {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::field(std::string_view value) {
  if (row_started_) out_ << ',';
  row_started_ = true;
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::field(int64_t value) { return field(std::to_string(value)); }

CsvWriter& CsvWriter::field(double value) { return field(format_double(value)); }

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

}  // namespace sampriv
