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

#ifndef SAMPRIV_CSV_HPP_
#define SAMPRIV_CSV_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace sampriv {

// Locale-independent shortest round-trip formatting ("inf" for infinities).
std::string format_double(double value);

// Comma-separated writer with a "# sampriv-csv v1 <table>" schema comment
// line. Output depends only on the appended values, never on the locale.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view table_name);

  void header(std::span<const std::string_view> columns);

  CsvWriter& field(std::string_view value);
  CsvWriter& field(int64_t value);
  CsvWriter& field(double value);
  void end_row();

 private:
  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace sampriv

#endif  // SAMPRIV_CSV_HPP_
