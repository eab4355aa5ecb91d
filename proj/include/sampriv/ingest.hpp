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

#ifndef SAMPRIV_INGEST_HPP_
#define SAMPRIV_INGEST_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sampriv/simulation.hpp"

namespace sampriv {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row-major half-open lat/lng grid. Cells are [edge, edge + cell_size), so
// every in-bounds point maps to exactly one identifier, and the identifier
// space must fit in 32 bits.
struct GridSpec {
  double lat_min, lat_max, lng_min, lng_max;
  double cell_size;
  int64_t rows;     // derived
  int64_t columns;  // derived

  GridSpec(double lat_min, double lat_max, double lng_min, double lng_max,
           double cell_size);
};

// Location identifier of an in-bounds point: floor-divided row and column,
// row-major. Out-of-bounds points raise.
int64_t discretize(double lat, double lng, const GridSpec& grid);

struct CheckinRecord {
  std::string user_id;
  int64_t timestamp;  // seconds since the Unix epoch
  double lat, lng;
  int64_t location_id;
};

struct PatientRecord {
  bool recurrence;
  int32_t age_group;         // "10-19" = 1, ..., "90-99" = 9
  int32_t tumor_size_group;  // "0-4" = 1, ..., "55-59" = 12
};

// One truthful raw value per owner plus the ground-truth histogram over raw
// values. Parsing is single-pass; memory scales with the number of distinct
// owners and values, not with the row count.
struct OwnerValues {
  std::map<std::string, int64_t> value_by_owner;
  std::map<int64_t, int64_t> histogram;
  int64_t accepted_rows = 0;
  int64_t malformed_rows = 0;
  int64_t filtered_rows = 0;  // valid rows outside the window or grid
};

// How a check-in row maps to a truthful value: the dataset's native
// location id, or discretization of the coordinate into a grid cell.
// Optional [begin, end) time window in Unix seconds. When a user has
// several qualifying check-ins, the latest one wins.
struct CheckinSelection {
  std::optional<GridSpec> grid;
  std::optional<std::pair<int64_t, int64_t>> window;
};

// Tab-separated check-ins: user, ISO-8601 time, latitude, longitude,
// location id. Malformed rows are counted and skipped; more than 10%
// malformed rows, or no usable rows at all, raise ParseError.
OwnerValues parse_checkins(std::istream& in, const CheckinSelection& selection = {});

enum class PatientAttribute { kAge, kTumorSize };

// Number of range groups in the published enumeration of an attribute.
int32_t attribute_group_count(PatientAttribute attribute);

// Comma-separated patient rows in the published 10-column attribute order.
// The selected attribute's range token maps to its 1-based group; rows with
// an unknown or missing ("?") token are counted and skipped.
OwnerValues parse_breast_cancer(std::istream& in, PatientAttribute attribute);

// Population whose value v count is the histogram mass of raw_values[v-1].
// Owners holding values outside the coding become part of the no-attribute
// population.
struct ValueCoding {
  std::vector<int64_t> raw_values;
};

// Codes raw values as 1..V: all distinct values in ascending raw order, or
// the top_k most frequent (ties broken by raw value) when top_k > 0.
ValueCoding code_values(const std::map<int64_t, int64_t>& histogram, int32_t top_k = 0);

PopulationSpec population_from(const OwnerValues& values, const ValueCoding& coding,
                               int32_t num_values);

// Enlarges the deniability pool: adds target_total - total() owners without
// the monitored attribute. target below the current total raises.
PopulationSpec pad_population(const PopulationSpec& spec, int64_t target_total);

}  // namespace sampriv

#endif  // SAMPRIV_INGEST_HPP_
