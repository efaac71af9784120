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

#include "aoi/params_io.h"

#include <cmath>
#include <fstream>

#include "aoi/errors.h"

namespace aoi {
namespace {

double RealField(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  const nlohmann::json& v = j.at(key);
  if (!v.is_number()) {
    throw ParseError(std::string("key '") + key + "' must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw ParseError(std::string("key '") + key + "' must be finite");
  }
  return x;
}

int IntField(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  const nlohmann::json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("key '") + key + "' must be an integer");
  }
  return v.get<int>();
}

}  // namespace

nlohmann::json ParamsToJson(const SystemParams& params) {
  return {{"p", params.p},
          {"lambda", params.lambda_eh},
          {"omega", params.omega},
          {"c_r", params.c_r},
          {"battery_cap", params.battery_cap},
          {"aoi_cap", params.aoi_cap}};
}

SystemParams ParamsFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("parameters must be a JSON object");
  SystemParams params;
  params.p = RealField(j, "p");
  params.lambda_eh = RealField(j, "lambda");
  params.omega = RealField(j, "omega");
  params.c_r = RealField(j, "c_r");
  params.battery_cap = IntField(j, "battery_cap");
  params.aoi_cap = j.contains("aoi_cap") ? IntField(j, "aoi_cap") : 200;
  return params;
}

SystemParams LoadParamsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ParamsFromJson(j);
}

void SaveParamsFile(const SystemParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << ParamsToJson(params).dump(2) << "\n";
}

}  // namespace aoi
