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

#ifndef AOI_PARAMS_IO_H_
#define AOI_PARAMS_IO_H_

#include <string>

#include "aoi/model.h"
#include "json.hpp"

namespace aoi {

// Flat object with keys p, lambda, omega, c_r, battery_cap, aoi_cap.
// aoi_cap may be omitted on input (defaults to 200). Throws ParseError on
// missing keys, wrong types or non-finite numbers.
nlohmann::json ParamsToJson(const SystemParams& params);
SystemParams ParamsFromJson(const nlohmann::json& j);

SystemParams LoadParamsFile(const std::string& path);
void SaveParamsFile(const SystemParams& params, const std::string& path);

}  // namespace aoi

#endif  // AOI_PARAMS_IO_H_
