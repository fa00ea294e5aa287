// Copyright 2026 The chr-coind Authors. All Rights Reserved.
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

#ifndef CHR_HYBRID_HPP_
#define CHR_HYBRID_HPP_

#include <map>
#include <string>
#include <vector>

#include "chr/lang.hpp"

namespace chr {

// Names of the control constraints: fresh f/1, frozen f/2, alive a/2 and
// the two counters. Renamed with a suffix when the program already uses one.
struct ControlFamily {
  std::string wrap = "f";
  std::string alive = "a";
  std::string next_stamp = "c_f";
  std::string next_alive = "c_a";
  friend bool operator==(const ControlFamily&, const ControlFamily&) = default;
};

ControlFamily choose_family(const Program& p);

struct Provenance {
  std::string source;
  // Rules derived on the way from `source`, ending with this one.
  std::vector<std::string> chain;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TranslatedProgram {
  Program program;
  ControlFamily family;
  std::map<std::string, Provenance> provenance;
};

// User rules get priority 3 (simplification) or 4 (propagation); rules with
// two unifiable persistent kept constraints get a collapsed variant.
Program step1_saturate(const Program& p, std::map<std::string, Provenance>* provenance = nullptr);
Program step2_wrap(const Program& p, const ControlFamily& family = {});
TranslatedProgram step3_control(const Program& p, const ControlFamily& family = {});

struct TranslateOptions {
  // Reject programs that break the kept-persistent/removed-linear shape.
  bool require_hybrid = true;
};

// Throws std::invalid_argument on a hybrid violation (when required) or a
// clash with the control rule names.
TranslatedProgram translate(const Program& p, const TranslateOptions& options = {});

// Persistent atoms wrapped as fresh, then the two counters at 0.
Query translate_state(const Query& q, const Program& source, const ControlFamily& family = {});

}  // namespace chr

#endif  // CHR_HYBRID_HPP_
