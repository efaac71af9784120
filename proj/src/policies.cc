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

#include "aoi/policies.h"

#include <charconv>
#include <cstdio>

#include "aoi/errors.h"
#include "aoi/tables_io.h"

namespace aoi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <typename T>
T ParseNumber(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void ValidatePolicy(const PolicySpec& spec) {
  if (const auto* per = std::get_if<Periodic>(&spec)) {
    if (per->period < 1) throw DomainError("period must be at least 1");
    if (per->phase < 0 || per->phase >= per->period) {
      throw DomainError("phase must lie in [0, period)");
    }
  } else if (const auto* rnd = std::get_if<Randomized>(&spec)) {
    if (!(rnd->p_tx >= 0.0 && rnd->p_tx <= 1.0)) {
      throw DomainError("p_tx must lie in [0, 1]");
    }
  }
}

double TransmitProbability(const PolicySpec& spec, State s, std::int64_t t) {
  return std::visit(
      Overloaded{
          [](const ZeroWait&) { return 1.0; },
          [&](const Periodic& per) {
            return t % per.period == per.phase ? 1.0 : 0.0;
          },
          [](const Randomized& rnd) { return rnd.p_tx; },
          [&](const EnergyFirst&) { return s.battery > 0 ? 1.0 : 0.0; },
          [&](const Threshold& th) {
            return th.tp.Decide(s) == Action::kTransmit ? 1.0 : 0.0;
          },
          [&](const Table& tab) {
            return tab.pt.At(s) == Action::kTransmit ? 1.0 : 0.0;
          },
      },
      spec);
}

Action Decide(const PolicySpec& spec, State s, std::int64_t t,
              RandomStream& rng) {
  if (const auto* rnd = std::get_if<Randomized>(&spec)) {
    return rng.Bernoulli(rnd->p_tx) ? Action::kTransmit : Action::kIdle;
  }
  return TransmitProbability(spec, s, t) > 0.0 ? Action::kTransmit
                                               : Action::kIdle;
}

bool IsMarkovStationary(const PolicySpec& spec) {
  return !std::holds_alternative<Periodic>(spec) &&
         !std::holds_alternative<Randomized>(spec);
}

PolicySpec ParsePolicySpec(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);

  PolicySpec spec;
  if (head == "zero-wait" && rest.empty() && colon == std::string_view::npos) {
    spec = ZeroWait{};
  } else if (head == "energy-first" && colon == std::string_view::npos) {
    spec = EnergyFirst{};
  } else if (head == "periodic" && !rest.empty()) {
    const std::size_t second = rest.find(':');
    Periodic per;
    per.period = ParseNumber<int>(rest.substr(0, second), "period");
    if (second != std::string_view::npos) {
      per.phase = ParseNumber<int>(rest.substr(second + 1), "phase");
    }
    spec = per;
  } else if (head == "random") {
    Randomized rnd;
    if (colon != std::string_view::npos) {
      rnd.p_tx = ParseNumber<double>(rest, "transmit probability");
    }
    spec = rnd;
  } else if (head == "threshold" && !rest.empty()) {
    spec = Threshold{LoadThresholdJson(std::string(rest))};
  } else {
    throw ParseError("unknown policy '" + std::string(text) + "'");
  }
  try {
    ValidatePolicy(spec);
  } catch (const DomainError& e) {
    throw ParseError("policy '" + std::string(text) + "': " + e.what());
  }
  return spec;
}

std::string PolicyLabel(const PolicySpec& spec) {
  return std::visit(
      Overloaded{
          [](const ZeroWait&) -> std::string { return "zero-wait"; },
          [](const Periodic& per) -> std::string {
            std::string label = "periodic:" + std::to_string(per.period);
            if (per.phase != 0) label += ":" + std::to_string(per.phase);
            return label;
          },
          [](const Randomized& rnd) -> std::string {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "random:%g", rnd.p_tx);
            return buf;
          },
          [](const EnergyFirst&) -> std::string { return "energy-first"; },
          [](const Threshold&) -> std::string { return "threshold"; },
          [](const Table&) -> std::string { return "table"; },
      },
      spec);
}

}  // namespace aoi
