// Copyright 2026 The cwsdec Authors
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

#pragma once

// In-process implementations of the cwsdec subcommands. Each returns the
// process exit code: 0 success, 1 verification or decode failure, 2 usage
// or input error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cwsdec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class ReportFormat { kText, kStructured };

/// Code source shared by the commands: a spec file, or the family at d.
struct CodeSource {
  std::string spec_path;
  std::optional<int> d;
  bool allow_small_d = false;
};

struct BuildArgs {
  int d = 0;
  std::string out_path;
  bool allow_small_d = false;
  ReportFormat format = ReportFormat::kText;
};

struct VerifyArgs {
  CodeSource source;
  std::string level;  // classical | kl | distance | theorems | all
  int delta = 3;
  std::size_t max_cases = 0;  // theorem checks; 0 = exhaustive
  std::uint64_t seed = 1;
  std::size_t max_dim = 3125;
  ReportFormat format = ReportFormat::kText;
  std::string out_path;
};

struct DecodeTrialArgs {
  CodeSource source;
  std::string error = "random";
  std::uint64_t seed = 1;
  std::size_t max_dim = 3125;
  ReportFormat format = ReportFormat::kText;
  std::string out_path;
};

struct ExhaustiveArgs {
  CodeSource source;
  std::uint64_t seed = 1;
  std::size_t superpositions = 100;
  std::size_t max_weight = 1;
  std::size_t max_dim = 3125;
  ReportFormat format = ReportFormat::kText;
  std::string out_path;
};

struct AlgebraArgs {
  int d = 2;
  std::size_t n = 5;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::size_t max_dim = 1024;
  ReportFormat format = ReportFormat::kText;
  std::string out_path;
};

struct SnapshotArgs {
  CodeSource source;
  std::string error;  // empty: no error applied
  std::uint64_t seed = 1;
  std::size_t max_dim = 3125;
  std::string out_path;
};

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_decode_trial(const DecodeTrialArgs& args, std::ostream& out, std::ostream& err);
int cmd_exhaustive(const ExhaustiveArgs& args, std::ostream& out, std::ostream& err);
int cmd_algebra_check(const AlgebraArgs& args, std::ostream& out, std::ostream& err);
int cmd_snapshot(const SnapshotArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cwsdec
