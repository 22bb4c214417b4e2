/*
 * Copyright 2026 The dataplace Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Randomized algebraic laws of the integer-set engine. Each returns the number
// of cases that held; shared by the unit tests and the acceptance runner.

#pragma once

#include <cstdint>

namespace dataplace::props {

struct Outcome {
  int cases = 0;
  int held = 0;
  bool ok() const { return cases > 0 && held == cases; }
};

Outcome compose_associative(int cases, std::uint32_t seed);
Outcome inverse_involution(int cases, std::uint32_t seed);
Outcome inclusion_exclusion(int cases, std::uint32_t seed);
/// |pred(S)| == |S| - 1 for nonempty S, and pred(S) is contained in lex_lt(S)^-1.
Outcome pred_size_law(int cases, std::uint32_t seed);

/// Cost-model identities under random hardware parameters, over the volumes of
/// the small benchmark designs: total == max(comp, comm), comm == max(dram,
/// on_chip), E_mac independent of Util when e_idle == e_act, energy monotone in
/// every coefficient, and TV + SV + TSV + UV == Total.
Outcome cost_identities(int cases, std::uint32_t seed);

}  // namespace dataplace::props
