// Copyright 2026 The Authors.
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

#ifndef GCE_FIXTURES_HPP_
#define GCE_FIXTURES_HPP_

// Bundled published results (fold means and stds) and the dominance and
// flag outcomes they are expected to reproduce.

#include <cstddef>
#include <string>
#include <vector>

#include "gce/metrics.hpp"
#include "json.hpp"

namespace gce {

std::vector<std::string> fixture_names();

// Throws ConfigError on an empty or unknown name.
std::vector<EvalRecord> fixture_records(const std::string& name);

struct FixtureCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct FixtureReport {
  std::string fixture;
  DominanceReport dominance;
  std::vector<FixtureCheck> checks;

  bool ok() const;
  nlohmann::json to_json() const;
};

// Reruns comparison and flagging over the fixture and diffs the outcomes
// against the stored expectations.
FixtureReport replay_fixture(const std::string& name);

}  // namespace gce

#endif  // GCE_FIXTURES_HPP_
