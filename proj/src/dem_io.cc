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

#include "argrw/dem_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace argrw {

DemParseError::DemParseError(size_t line, size_t column,
                             const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class LineParser {
 public:
  LineParser(std::string_view line, size_t line_number)
      : line_(line), line_number_(line_number) {}

  [[noreturn]] void fail(size_t pos, const std::string& message) const {
    throw DemParseError(line_number_, pos + 1, message);
  }

  size_t skip_spaces(size_t pos) const {
    while (pos < line_.size() && is_space(line_[pos])) ++pos;
    return pos;
  }

  // Reads a maximal run of non-space characters.
  std::string_view token(size_t pos, size_t* end) const {
    size_t e = pos;
    while (e < line_.size() && !is_space(line_[e])) ++e;
    *end = e;
    return line_.substr(pos, e - pos);
  }

  uint64_t parse_index(std::string_view text, size_t pos) const {
    if (!text.empty() && text[0] == '-') fail(pos, "negative index");
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                     value);
    if (ec != std::errc() || ptr != text.data() + text.size() ||
        text.empty()) {
      fail(pos, "expected a non-negative integer, got '" + std::string(text) +
                    "'");
    }
    if (value > UINT32_MAX) fail(pos, "index too large");
    return value;
  }

  std::string_view line() const { return line_; }

 private:
  std::string_view line_;
  size_t line_number_;
};

}  // namespace

DetectorErrorModel parse_dem(std::string_view text) {
  std::vector<ErrorMechanism> mechanisms;
  std::optional<size_t> declared_detectors, declared_observables;
  size_t declared_detectors_line = 0, declared_observables_line = 0;
  uint32_t current_round = 0;

  size_t line_number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(start, nl - start);
    start = nl + 1;
    ++line_number;

    LineParser p(raw, line_number);
    size_t pos = p.skip_spaces(0);
    if (pos == raw.size() || raw[pos] == '#') continue;

    if (raw.compare(pos, 6, "error(") == 0) {
      size_t arg_begin = pos + 6;
      size_t close = raw.find(')', arg_begin);
      if (close == std::string_view::npos) p.fail(pos, "missing ')'");
      std::string_view arg = raw.substr(arg_begin, close - arg_begin);
      if (arg.find(',') != std::string_view::npos) {
        p.fail(arg_begin, "error takes exactly one probability argument");
      }
      double prob = 0;
      auto [ptr, ec] =
          std::from_chars(arg.data(), arg.data() + arg.size(), prob);
      if (ec != std::errc() || ptr != arg.data() + arg.size() || arg.empty()) {
        p.fail(arg_begin, "malformed probability '" + std::string(arg) + "'");
      }
      if (!(prob > 0 && prob < 1)) {
        p.fail(arg_begin, "probability " + std::string(arg) +
                              " is outside the open interval (0, 1)");
      }
      ErrorMechanism m;
      m.probability = prob;
      m.round = current_round;
      size_t cursor = close + 1;
      if (cursor < raw.size() && !is_space(raw[cursor])) {
        p.fail(cursor, "expected a space after ')'");
      }
      while (true) {
        cursor = p.skip_spaces(cursor);
        if (cursor >= raw.size()) break;
        size_t end;
        std::string_view tok = p.token(cursor, &end);
        if (tok == "^") {
          p.fail(cursor, "correlated error separators '^' are not supported");
        }
        if (tok[0] == 'D') {
          m.detectors.push_back(
              static_cast<uint32_t>(p.parse_index(tok.substr(1), cursor + 1)));
        } else if (tok[0] == 'L') {
          m.observables.push_back(
              static_cast<uint32_t>(p.parse_index(tok.substr(1), cursor + 1)));
        } else {
          p.fail(cursor, "unsupported target '" + std::string(tok) + "'");
        }
        cursor = end;
      }
      if (m.detectors.empty() && m.observables.empty()) {
        p.fail(pos, "error instruction has no targets");
      }
      for (auto* v : {&m.detectors, &m.observables}) {
        std::sort(v->begin(), v->end());
        if (std::adjacent_find(v->begin(), v->end()) != v->end()) {
          p.fail(pos, "error instruction repeats a target");
        }
      }
      mechanisms.push_back(std::move(m));
      continue;
    }

    size_t end;
    std::string_view keyword = p.token(pos, &end);
    if (keyword == "detector_count" || keyword == "observable_count" ||
        keyword == "round") {
      size_t arg_pos = p.skip_spaces(end);
      if (arg_pos == raw.size()) p.fail(arg_pos, "missing integer argument");
      size_t arg_end;
      std::string_view arg = p.token(arg_pos, &arg_end);
      uint64_t value = p.parse_index(arg, arg_pos);
      if (p.skip_spaces(arg_end) != raw.size()) {
        p.fail(arg_end, "unexpected trailing text");
      }
      if (keyword == "round") {
        current_round = static_cast<uint32_t>(value);
      } else if (keyword == "detector_count") {
        if (declared_detectors) p.fail(pos, "detector_count declared twice");
        declared_detectors = value;
        declared_detectors_line = line_number;
      } else {
        if (declared_observables) {
          p.fail(pos, "observable_count declared twice");
        }
        declared_observables = value;
        declared_observables_line = line_number;
      }
      continue;
    }

    p.fail(pos, "unsupported instruction '" + std::string(keyword) + "'");
  }

  size_t nd = 0, no = 0;
  for (const auto& m : mechanisms) {
    if (!m.detectors.empty()) nd = std::max<size_t>(nd, m.detectors.back() + 1);
    if (!m.observables.empty()) {
      no = std::max<size_t>(no, m.observables.back() + 1);
    }
  }
  if (declared_detectors) {
    if (*declared_detectors < nd) {
      throw DemParseError(declared_detectors_line, 1,
                          "detector_count " +
                              std::to_string(*declared_detectors) +
                              " is smaller than the referenced detectors");
    }
    nd = *declared_detectors;
  }
  if (declared_observables) {
    if (*declared_observables < no) {
      throw DemParseError(declared_observables_line, 1,
                          "observable_count " +
                              std::to_string(*declared_observables) +
                              " is smaller than the referenced observables");
    }
    no = *declared_observables;
  }
  return DetectorErrorModel(std::move(mechanisms), nd, no);
}

DetectorErrorModel read_dem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open DEM file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_dem(buffer.str());
}

std::string to_dem_text(const DetectorErrorModel& model) {
  std::string out;
  out += "detector_count " + std::to_string(model.num_detectors()) + "\n";
  out += "observable_count " + std::to_string(model.num_observables()) + "\n";
  uint32_t current_round = 0;
  char buf[64];
  for (const auto& m : model.mechanisms()) {
    uint32_t r = m.round.value_or(current_round);
    if (r != current_round) {
      out += "round " + std::to_string(r) + "\n";
      current_round = r;
    }
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), m.probability);
    out += "error(";
    out.append(buf, ptr);
    out += ")";
    for (uint32_t d : m.detectors) out += " D" + std::to_string(d);
    for (uint32_t o : m.observables) out += " L" + std::to_string(o);
    out += "\n";
  }
  return out;
}

}  // namespace argrw
