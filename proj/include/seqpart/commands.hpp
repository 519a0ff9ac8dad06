// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQPART_COMMANDS_HPP
#define SEQPART_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "seqpart/aligner.hpp"
#include "seqpart/synthgen.hpp"

namespace seqpart::cli {

// Each command returns a process exit status; diagnostics go to `log`.
// An output path of "-" means standard output.

struct AlignArgs {
  std::filesystem::path manifest;
  Scheme scheme = Scheme::kDsp;
  std::uint64_t seed = 0;
  bool skip_bad = false;
  std::string out = "-";
};
int cmd_align(const AlignArgs& args, std::ostream& log);

int cmd_eval(const std::filesystem::path& scores, const std::string& out,
             std::ostream& log);

struct SynthArgs {
  SynthConfig cfg;
  std::size_t episodes = 1;
  std::filesystem::path outdir;
};
int cmd_synth(const SynthArgs& args, std::ostream& log);

int cmd_correlate(const std::filesystem::path& audio,
                  const std::filesystem::path& text,
                  const std::string& out_prefix, std::ostream& log);

struct BenchArgs {
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ms;
  std::size_t dim = 144;
  std::size_t repeats = 3;
  bool cost_only = false;
  bool serial = false;
  std::string out = "-";
};
int cmd_bench(const BenchArgs& args, std::ostream& log);

/// Row-wise cosine similarities (rows of `a` against rows of `b`) as CSV.
/// Rows with zero norm produce zeros; their 1-based indices are appended to
/// `zero_rows_a` / `zero_rows_b`.
std::string cosine_matrix_csv(const EmbeddingSequence& a,
                              const EmbeddingSequence& b,
                              std::vector<std::size_t>* zero_rows_a,
                              std::vector<std::size_t>* zero_rows_b);

}  // namespace seqpart::cli

#endif  // SEQPART_COMMANDS_HPP
