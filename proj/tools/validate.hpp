// Copyright 2026 the rislink authors.
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

#ifndef RISLINK_TOOLS_VALIDATE_HPP
#define RISLINK_TOOLS_VALIDATE_HPP

#include <string>

#include "commands.hpp"

namespace rislink::cli {

// Self-check report: special-function identities, distribution invariants
// with a seeded Monte Carlo agreement gate (--ks-threshold), and sampler
// reproducibility. suite is specfun, dists, mc or all. Returns 0 when every
// check passes, 1 otherwise.
int run_validate(const CommonArgs& c, const std::string& suite,
                 double ks_threshold);

}  // namespace rislink::cli

#endif  // RISLINK_TOOLS_VALIDATE_HPP
