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

#include <cstring>
#include <sstream>

#include "aoi/errors.h"
#include "aoi/solver.h"
#include "gtest/gtest.h"

namespace aoi {
namespace {

TEST(ValueCsvTest, RoundTripIsExact) {
  SystemParams params;
  params.aoi_cap = 25;
  params.battery_cap = 4;
  const ValueTable v = Solve(params).values;
  std::stringstream buf;
  WriteValueCsv(v, buf);
  const ValueTable back = ReadValueCsv(buf);
  EXPECT_EQ(back.grid, v.grid);
  ASSERT_EQ(back.values.size(), v.values.size());
  EXPECT_EQ(std::memcmp(back.values.data(), v.values.data(), v.values.size() * sizeof(double)),
            0);
}

TEST(ValueCsvTest, LayoutIsDeltaQValue) {
  const StateGrid grid(2, 1);
  ValueTable v;
  v.grid = grid;
  v.values = {0.5, 1.5, 2.5, 3.5};
  std::ostringstream out;
  WriteValueCsv(v, out);
  EXPECT_EQ(out.str(), "delta,q,value\n1,0,0.5\n2,0,1.5\n1,1,2.5\n2,1,3.5\n");
}

TEST(ValueCsvTest, RejectsMalformedInput) {
  for (const char* bad : {"", "x,y,z\n1,0,1\n", "delta,q,value\n1,0,abc\n",
                          "delta,q,value\n1,0,1\n1,0,2\n", "delta,q,value\n1,0,1\n2,1,1\n",
                          "delta,q,value\n1,0\n", "delta,q,value\n0,0,1\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(ReadValueCsv(in), ParseError) << bad;
  }
  EXPECT_THROW(LoadValueCsv("/nonexistent/values.csv"), ParseError);
}

TEST(ThresholdIoTest, CsvUsesNever) {
  std::ostringstream out;
  WriteThresholdCsv(ThresholdPolicy{{4, std::nullopt, 1}}, out);
  EXPECT_EQ(out.str(), "q,threshold\n0,4\n1,never\n2,1\n");
}

TEST(ThresholdIoTest, JsonRoundTrip) {
  const ThresholdPolicy tp{{7, 5, std::nullopt, 2}};
  const nlohmann::json j = ThresholdToJson(tp);
  EXPECT_EQ(j.at("battery_cap").get<int>(), 3);
  EXPECT_TRUE(j.at("thresholds")[2].is_null());
  EXPECT_EQ(ThresholdFromJson(j), tp);
}

TEST(ThresholdIoTest, JsonRejectsBadInput) {
  EXPECT_THROW(ThresholdFromJson(nlohmann::json::parse(R"({"thresholds": [1, 0]})")),
               ParseError);
  EXPECT_THROW(ThresholdFromJson(nlohmann::json::parse(R"({"thresholds": "x"})")),
               ParseError);
  EXPECT_THROW(ThresholdFromJson(nlohmann::json::parse(
                   R"({"battery_cap": 3, "thresholds": [1, 2]})")),
               ParseError);
}

}  // namespace
}  // namespace aoi
