// Copyright 2026 The argrw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text format for detector error models.
//
//   # comment
//   detector_count 4
//   observable_count 1
//   round 2
//   error(0.001) D0 D1 L0
//
// `round N` tags every following `error` instruction with round N (the
// default is round 0). Counts are inferred from the largest referenced index
// when not declared. Anything else (correlated `^` separators, coordinate
// annotations, `repeat` blocks) is rejected.

#ifndef ARGRW_DEM_IO_H_
#define ARGRW_DEM_IO_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "argrw/error_model.h"

namespace argrw {

class DemParseError : public std::runtime_error {
 public:
  DemParseError(size_t line, size_t column, const std::string& message);

  // 1-based position of the offending token.
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_;
  size_t column_;
};

DetectorErrorModel parse_dem(std::string_view text);
DetectorErrorModel read_dem_file(const std::string& path);

// Emits declared counts, round tags and one `error` line per mechanism.
// Probabilities use the shortest round-tripping decimal form.
std::string to_dem_text(const DetectorErrorModel& model);

}  // namespace argrw

#endif  // ARGRW_DEM_IO_H_
