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

#ifndef AOI_ERRORS_H_
#define AOI_ERRORS_H_

#include <stdexcept>
#include <string>

namespace aoi {

// Invalid parameters, states or configuration.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input files (JSON, CSV, policy strings).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value iteration hit max_iters before the span criterion fired.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_span, long iterations)
      : std::runtime_error(what), last_span_(last_span), iterations_(iterations) {}

  double last_span() const { return last_span_; }
  long iterations() const { return iterations_; }

 private:
  double last_span_;
  long iterations_;
};

// A policy that should be threshold-shaped is not, or a structural
// certificate failed.
class StructuralViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The AoI truncation bound is too small for the computation at hand.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Policy-induced chain has more than one recurrent class carrying mass.
class ReducibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aoi

#endif  // AOI_ERRORS_H_
