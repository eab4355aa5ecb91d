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

#include "sampriv/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <span>
#include <string_view>
#include <utility>

namespace sampriv {

namespace {

constexpr int64_t kMaxGridIds = int64_t{1} << 32;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc{} && result.ptr == end;
}

// Days since the Unix epoch for a civil date (Howard Hinnant's algorithm).
int64_t days_from_civil(int64_t y, int64_t m, int64_t d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int64_t yoe = y - era * 400;
  const int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

// "2010-10-19T23:55:27Z" -> Unix seconds. UTC only.
bool parse_iso8601(std::string_view text, int64_t& out) {
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    return false;
  }
  int64_t year, month, day, hour, minute, second;
  if (!parse_number(text.substr(0, 4), year) || !parse_number(text.substr(5, 2), month) ||
      !parse_number(text.substr(8, 2), day) || !parse_number(text.substr(11, 2), hour) ||
      !parse_number(text.substr(14, 2), minute) ||
      !parse_number(text.substr(17, 2), second)) {
    return false;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
      second > 60) {
    return false;
  }
  out = days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
  return true;
}

void check_parse_health(const OwnerValues& values) {
  const int64_t rows = values.accepted_rows + values.malformed_rows + values.filtered_rows;
  if (rows == 0) throw ParseError("no data rows");
  if (values.accepted_rows == 0) throw ParseError("no usable data rows");
  if (static_cast<double>(values.malformed_rows) > 0.1 * static_cast<double>(rows)) {
    throw ParseError("more than 10% malformed rows (" +
                     std::to_string(values.malformed_rows) + " of " + std::to_string(rows) +
                     ")");
  }
}

// Published range-group enumerations, 1-based in listed order.
constexpr std::array<std::string_view, 9> kAgeGroups = {
    "10-19", "20-29", "30-39", "40-49", "50-59", "60-69", "70-79", "80-89", "90-99"};
constexpr std::array<std::string_view, 12> kTumorSizeGroups = {
    "0-4",   "5-9",   "10-14", "15-19", "20-24", "25-29",
    "30-34", "35-39", "40-44", "45-49", "50-54", "55-59"};

int32_t group_of(std::string_view token, std::span<const std::string_view> groups) {
  for (size_t i = 0; i < groups.size(); ++i) {
    if (token == groups[i]) return static_cast<int32_t>(i) + 1;
  }
  return 0;
}

}  // namespace

GridSpec::GridSpec(double lat_min, double lat_max, double lng_min, double lng_max,
                   double cell_size)
    : lat_min(lat_min),
      lat_max(lat_max),
      lng_min(lng_min),
      lng_max(lng_max),
      cell_size(cell_size) {
  if (!(lat_min < lat_max) || !(lng_min < lng_max)) {
    throw std::invalid_argument("GridSpec: bounds must be non-empty");
  }
  if (!(cell_size > 0.0)) throw std::invalid_argument("GridSpec: cell_size must be positive");
  rows = static_cast<int64_t>(std::ceil((lat_max - lat_min) / cell_size));
  columns = static_cast<int64_t>(std::ceil((lng_max - lng_min) / cell_size));
  if (rows <= 0 || columns <= 0 || rows > kMaxGridIds / columns) {
    throw std::invalid_argument("GridSpec: cell identifiers must fit in 32 bits");
  }
}

int64_t discretize(double lat, double lng, const GridSpec& grid) {
  if (!(lat >= grid.lat_min && lat < grid.lat_max && lng >= grid.lng_min &&
        lng < grid.lng_max)) {
    throw std::out_of_range("discretize: point outside the grid");
  }
  const auto row = static_cast<int64_t>(std::floor((lat - grid.lat_min) / grid.cell_size));
  const auto col = static_cast<int64_t>(std::floor((lng - grid.lng_min) / grid.cell_size));
  return std::min(row, grid.rows - 1) * grid.columns + std::min(col, grid.columns - 1);
}

OwnerValues parse_checkins(std::istream& in, const CheckinSelection& selection) {
  if (!in) throw ParseError("unreadable check-in stream");

  OwnerValues values;
  // Latest qualifying check-in per user.
  std::map<std::string, std::pair<int64_t, int64_t>> latest;  // user -> (ts, value)

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto fields = split(line, '\t');
    CheckinRecord record;
    if (fields.size() != 5 || fields[0].empty() ||
        !parse_iso8601(fields[1], record.timestamp) || !parse_number(fields[2], record.lat) ||
        !parse_number(fields[3], record.lng) || !parse_number(fields[4], record.location_id) ||
        record.lat < -90.0 || record.lat > 90.0 || record.lng < -180.0 ||
        record.lng > 180.0) {
      ++values.malformed_rows;
      continue;
    }
    record.user_id = std::string(fields[0]);

    if (selection.window.has_value() &&
        (record.timestamp < selection.window->first ||
         record.timestamp >= selection.window->second)) {
      ++values.filtered_rows;
      continue;
    }

    int64_t value = record.location_id;
    if (selection.grid.has_value()) {
      try {
        value = discretize(record.lat, record.lng, *selection.grid);
      } catch (const std::out_of_range&) {
        ++values.filtered_rows;  // valid point outside the study area
        continue;
      }
    }

    ++values.accepted_rows;
    auto [it, inserted] = latest.try_emplace(record.user_id, record.timestamp, value);
    if (!inserted && record.timestamp >= it->second.first) {
      it->second = {record.timestamp, value};
    }
  }

  check_parse_health(values);
  for (const auto& [user, entry] : latest) {
    values.value_by_owner.emplace(user, entry.second);
    ++values.histogram[entry.second];
  }
  return values;
}

int32_t attribute_group_count(PatientAttribute attribute) {
  return attribute == PatientAttribute::kAge ? static_cast<int32_t>(kAgeGroups.size())
                                             : static_cast<int32_t>(kTumorSizeGroups.size());
}

OwnerValues parse_breast_cancer(std::istream& in, PatientAttribute attribute) {
  if (!in) throw ParseError("unreadable patient stream");

  OwnerValues values;
  int64_t row_index = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++row_index;

    const auto fields = split(line, ',');
    if (fields.size() != 10 ||
        (fields[0] != "no-recurrence-events" && fields[0] != "recurrence-events")) {
      ++values.malformed_rows;
      continue;
    }
    const std::string_view token = attribute == PatientAttribute::kAge ? fields[1] : fields[3];
    const int32_t group =
        attribute == PatientAttribute::kAge
            ? group_of(token, {kAgeGroups.data(), kAgeGroups.size()})
            : group_of(token, {kTumorSizeGroups.data(), kTumorSizeGroups.size()});
    if (group == 0) {  // unknown range token, including "?"
      ++values.malformed_rows;
      continue;
    }

    ++values.accepted_rows;
    values.value_by_owner.emplace("row" + std::to_string(row_index), group);
    ++values.histogram[group];
  }

  check_parse_health(values);
  return values;
}

ValueCoding code_values(const std::map<int64_t, int64_t>& histogram, int32_t top_k) {
  if (histogram.empty()) throw std::invalid_argument("code_values: empty histogram");
  ValueCoding coding;
  if (top_k <= 0 || std::cmp_greater_equal(top_k, histogram.size())) {
    for (const auto& [raw, count] : histogram) coding.raw_values.push_back(raw);
    return coding;
  }
  std::vector<std::pair<int64_t, int64_t>> by_count(histogram.begin(), histogram.end());
  std::sort(by_count.begin(), by_count.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  by_count.resize(static_cast<size_t>(top_k));
  std::sort(by_count.begin(), by_count.end());
  for (const auto& [raw, count] : by_count) coding.raw_values.push_back(raw);
  return coding;
}

PopulationSpec population_from(const OwnerValues& values, const ValueCoding& coding,
                               int32_t num_values) {
  if (std::cmp_greater(coding.raw_values.size(), num_values)) {
    throw std::invalid_argument("population_from: coding wider than num_values");
  }
  PopulationSpec spec{std::vector<int64_t>(static_cast<size_t>(num_values), 0), 0};
  std::map<int64_t, int32_t> code_of;
  for (size_t i = 0; i < coding.raw_values.size(); ++i) {
    code_of[coding.raw_values[i]] = static_cast<int32_t>(i) + 1;
  }
  for (const auto& [owner, raw] : values.value_by_owner) {
    const auto it = code_of.find(raw);
    if (it != code_of.end()) {
      ++spec.yes_counts[static_cast<size_t>(it->second - 1)];
    } else {
      ++spec.no_count;
    }
  }
  spec.validate();
  return spec;
}

PopulationSpec pad_population(const PopulationSpec& spec, int64_t target_total) {
  spec.validate();
  if (target_total < spec.total()) {
    throw std::invalid_argument("pad_population: target below the current population");
  }
  PopulationSpec padded = spec;
  padded.no_count += target_total - spec.total();
  return padded;
}

}  // namespace sampriv
