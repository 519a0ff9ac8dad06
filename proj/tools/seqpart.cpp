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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqpart/commands.hpp"

int main(int argc, char** argv) {
  using namespace seqpart;
  CLI::App app{"Optimal monotonic partitioning of embedding sequences"};
  app.require_subcommand(1);

  cli::AlignArgs align;
  std::string scheme_name = "dsp";
  auto* align_cmd = app.add_subcommand("align", "Score manifest pairs");
  align_cmd->add_option("--manifest", align.manifest, "JSON-lines manifest")
      ->required();
  align_cmd->add_option("--scheme", scheme_name, "dsp, equal or random")
      ->check(CLI::IsMember({"dsp", "equal", "random"}));
  align_cmd->add_option("--seed", align.seed, "Seed for the random scheme");
  align_cmd->add_flag("--skip-bad", align.skip_bad,
                      "Warn on bad records instead of failing");
  align_cmd->add_option("--out", align.out, "Score records (- for stdout)");

  std::string scores_path;
  std::string eval_out = "-";
  auto* eval_cmd = app.add_subcommand("eval", "AUC and EER over score records");
  eval_cmd->add_option("--scores", scores_path, "Output of align")->required();
  eval_cmd->add_option("--out", eval_out, "Report JSON (- for stdout)");

  cli::SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--vocab", synth.cfg.vocab_size, "Vocabulary size");
  synth_cmd->add_option("--dim", synth.cfg.dim, "Embedding dimension");
  synth_cmd->add_option("--phrase-len", synth.cfg.phrase_len, "Words (1-4)");
  synth_cmd->add_option("--dur-min", synth.cfg.dur_min, "Min frames per word");
  synth_cmd->add_option("--dur-max", synth.cfg.dur_max, "Max frames per word");
  synth_cmd->add_option("--noise", synth.cfg.noise_sigma, "Gaussian noise sigma");
  synth_cmd->add_flag("--hard-neg", synth.cfg.hard_negative,
                      "Hard negatives (one nearest-word substitution)");
  synth_cmd->add_option("--episodes", synth.episodes, "Number of episodes");
  synth_cmd->add_option("--seed", synth.cfg.seed, "Generator seed");
  synth_cmd->add_option("--outdir", synth.outdir, "Output directory")
      ->required();

  std::string corr_audio;
  std::string corr_text;
  std::string corr_prefix;
  auto* corr_cmd =
      app.add_subcommand("correlate", "Cosine-similarity matrices + cuts");
  corr_cmd->add_option("--audio", corr_audio)->required();
  corr_cmd->add_option("--text", corr_text)->required();
  corr_cmd->add_option("--out-prefix", corr_prefix)->required();

  cli::BenchArgs bench;
  bench.ns = {250, 500, 1000};
  bench.ms = {4};
  auto* bench_cmd = app.add_subcommand("bench", "Time the alignment DP");
  bench_cmd->add_option("--n", bench.ns, "Audio lengths")->delimiter(',');
  bench_cmd->add_option("--m", bench.ms, "Text lengths")->delimiter(',');
  bench_cmd->add_option("--dim", bench.dim, "Embedding dimension");
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per size");
  bench_cmd->add_flag("--cost-only", bench.cost_only,
                      "O(n)-memory variant without backtracking");
  bench_cmd->add_flag("--serial", bench.serial, "Use the serial kernel");
  bench_cmd->add_option("--out", bench.out, "Timing CSV (- for stdout)");

  CLI11_PARSE(app, argc, argv);

  if (align_cmd->parsed()) {
    align.scheme = *parse_scheme(scheme_name);
    return cli::cmd_align(align, std::cerr);
  }
  if (eval_cmd->parsed()) return cli::cmd_eval(scores_path, eval_out, std::cerr);
  if (synth_cmd->parsed()) return cli::cmd_synth(synth, std::cerr);
  if (corr_cmd->parsed()) {
    return cli::cmd_correlate(corr_audio, corr_text, corr_prefix, std::cerr);
  }
  return cli::cmd_bench(bench, std::cerr);
}
