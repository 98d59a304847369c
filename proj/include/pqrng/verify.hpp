// Copyright 2026 The pqrng Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQRNG_VERIFY_HPP_
#define PQRNG_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace pqrng {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Self-check battery behind `pqrng verify`:
//   - closed-form parity vs. the truncated series (coherent, phase-averaged,
//     thermal) over an n̄ grid, and the thermal P_e/P_o closed forms vs. the
//     series;
//   - coherent and phase-averaged pmfs identical entry for entry;
//   - P_e and P_o rounding to 0.50000 at n̄ = 6 and to 13 decimals at n̄ = 16;
//   - Monte-Carlo parity of sampled pulse trains within 4σ of theory;
//   - multiplexed click laws vs. brute-force routing enumeration, and the
//     single-port identity 2e^{-n̄} - 1.
std::vector<CheckResult> run_verification(std::uint64_t seed = 20260101);

}  // namespace pqrng

#endif  // PQRNG_VERIFY_HPP_
