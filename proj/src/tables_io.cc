// Copyright 2026 The aoi-backup Authors
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

#include "aoi/tables_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "aoi/errors.h"

namespace aoi {
namespace {

std::string FormatReal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <typename T>
T ParseField(std::string_view field, int line) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" +
                     std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string StripCr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void WriteValueCsv(const ValueTable& v, std::ostream& out) {
  out << "delta,q,value\n";
  const StateGrid& grid = v.grid;
  for (int q = 0; q <= grid.battery_cap(); ++q) {
    for (int d = 1; d <= grid.aoi_cap(); ++d) {
      out << d << "," << q << "," << FormatReal(v.At({d, q})) << "\n";
    }
  }
}

ValueTable ReadValueCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || StripCr(line) != "delta,q,value") {
    throw ParseError("value table must start with header 'delta,q,value'");
  }
  struct Row {
    int delta;
    int q;
    double value;
  };
  std::vector<Row> rows;
  int lineno = 1;
  int max_delta = 0;
  int max_q = -1;
  while (std::getline(in, line)) {
    ++lineno;
    line = StripCr(line);
    if (line.empty()) continue;
    const auto fields = SplitCsv(line);
    if (fields.size() != 3) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 3 fields");
    }
    Row r{ParseField<int>(fields[0], lineno), ParseField<int>(fields[1], lineno),
          ParseField<double>(fields[2], lineno)};
    if (r.delta < 1 || r.q < 0 || !std::isfinite(r.value)) {
      throw ParseError("line " + std::to_string(lineno) + ": invalid entry");
    }
    max_delta = std::max(max_delta, r.delta);
    max_q = std::max(max_q, r.q);
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError("value table has no rows");

  ValueTable v;
  v.grid = StateGrid(max_delta, max_q);
  v.values.assign(v.grid.size(), 0.0);
  std::vector<char> seen(v.grid.size(), 0);
  for (const Row& r : rows) {
    const std::size_t i = v.grid.Index({r.delta, r.q});
    if (seen[i]) {
      throw ParseError("duplicate entry for state " + ToString({r.delta, r.q}));
    }
    seen[i] = 1;
    v.values[i] = r.value;
  }
  if (rows.size() != v.grid.size()) {
    throw ParseError("value table is missing " +
                     std::to_string(v.grid.size() - rows.size()) + " states");
  }
  v.reference = {1, max_q};
  return v;
}

void WriteThresholdCsv(const ThresholdPolicy& tp, std::ostream& out) {
  out << "q,threshold\n";
  for (std::size_t q = 0; q < tp.thresholds.size(); ++q) {
    out << q << ",";
    if (tp.thresholds[q]) {
      out << *tp.thresholds[q];
    } else {
      out << "never";
    }
    out << "\n";
  }
}

nlohmann::json ThresholdToJson(const ThresholdPolicy& tp) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : tp.thresholds) {
    if (t) {
      arr.push_back(*t);
    } else {
      arr.push_back(nullptr);
    }
  }
  return {{"battery_cap", tp.battery_cap()}, {"thresholds", arr}};
}

ThresholdPolicy ThresholdFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("thresholds") || !j["thresholds"].is_array()) {
    throw ParseError("threshold policy needs a 'thresholds' array");
  }
  ThresholdPolicy tp;
  for (const auto& t : j["thresholds"]) {
    if (t.is_null()) {
      tp.thresholds.push_back(std::nullopt);
    } else if (t.is_number_integer() && t.get<int>() >= 1) {
      tp.thresholds.push_back(t.get<int>());
    } else {
      throw ParseError("thresholds must be integers >= 1 or null");
    }
  }
  if (tp.thresholds.size() < 2) {
    throw ParseError("threshold policy needs at least two battery levels");
  }
  if (j.contains("battery_cap") &&
      (!j["battery_cap"].is_number_integer() ||
       j["battery_cap"].get<int>() != tp.battery_cap())) {
    throw ParseError("battery_cap does not match the thresholds array");
  }
  return tp;
}

void SaveValueCsv(const ValueTable& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  WriteValueCsv(v, out);
}

ValueTable LoadValueCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open value table " + path);
  return ReadValueCsv(in);
}

void SaveThresholdJson(const ThresholdPolicy& tp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << ThresholdToJson(tp).dump(2) << "\n";
}

ThresholdPolicy LoadThresholdJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open threshold policy " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ThresholdFromJson(j);
}

}  // namespace aoi
