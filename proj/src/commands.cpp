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

#include "seqpart/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "seqpart/bench.hpp"
#include "seqpart/harness.hpp"
#include "seqpart/io.hpp"
#include "seqpart/metrics.hpp"

namespace seqpart::cli {

namespace {

void emit(const std::string& out, const std::string& content) {
  if (out == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    io::write_file(out, content);
  }
}

std::string episode_file(std::size_t episode, const std::string& tag) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "ep%06zu-%s.emb", episode, tag.c_str());
  return buf;
}

double squared_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

}  // namespace

int cmd_align(const AlignArgs& args, std::ostream& log) {
  std::vector<io::ManifestRecord> records;
  try {
    records = io::read_manifest(args.manifest);
  } catch (const Error& e) {
    log << "error: manifest: " << e.what() << "\n";
    return 2;
  }

  std::vector<std::optional<io::ScoreRecord>> results(records.size());
  std::vector<std::string> failures(records.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(records.size());
       ++t) {
    const auto idx = static_cast<std::size_t>(t);
    const auto& rec = records[idx];
    try {
      LabeledPair pair(io::read_embedding(rec.audio_path),
                       io::read_embedding(rec.text_path), rec.label);
      const AlignmentOutcome outcome =
          align_with_scheme(pair, args.scheme, pair_seed(args.seed, idx));
      results[idx] = io::ScoreRecord{rec.id, outcome.cost,
                                     outcome.boundaries.cuts(), rec.label,
                                     std::string(to_string(args.scheme))};
    } catch (const std::exception& e) {
      failures[idx] = e.what();
    }
  }

  std::size_t failed = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (results[k]) continue;
    ++failed;
    log << (args.skip_bad ? "warning: " : "error: ") << "record '"
        << records[k].id << "': " << failures[k] << "\n";
  }
  if (failed > 0 && !args.skip_bad) {
    log << "error: " << failed << " of " << records.size()
        << " records failed; no output written (use --skip-bad to continue)\n";
    return 1;
  }

  std::string out;
  for (const auto& r : results) {
    if (r) out += io::score_line(*r) + "\n";
  }
  try {
    emit(args.out, out);
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_eval(const std::filesystem::path& scores, const std::string& out,
             std::ostream& log) {
  try {
    const auto records = io::parse_scores(io::read_file(scores));
    if (records.empty()) {
      log << "error: " << scores.string() << " contains no score records\n";
      return 1;
    }
    std::vector<ScoredPair> pairs;
    pairs.reserve(records.size());
    for (const auto& r : records) pairs.push_back({r.id, r.cost, r.label});
    emit(out, io::report_json(evaluate(pairs)) + "\n");
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_synth(const SynthArgs& args, std::ostream& log) {
  try {
    args.cfg.validate();
    std::filesystem::create_directories(args.outdir);
    const auto corpus = generate_corpus(args.cfg, args.episodes);
    std::string manifest;
    for (const auto& ep : corpus) {
      const std::string text_file = episode_file(ep.index, "text");
      io::write_embedding_binary(args.outdir / text_file,
                                 ep.positives.front().text);
      const auto write_pairs = [&](const std::vector<LabeledPair>& pairs,
                                   int label) {
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          const std::string id = pair_id(ep.index, label, k);
          const std::string audio_file = id + ".emb";
          io::write_embedding_binary(args.outdir / audio_file, pairs[k].audio);
          manifest += io::manifest_line({id, audio_file, text_file, label});
          manifest += "\n";
        }
      };
      write_pairs(ep.positives, 1);
      write_pairs(ep.negatives, 0);
    }
    io::write_file(args.outdir / "manifest.jsonl", manifest);
    log << "wrote " << corpus.size() * 2 * kPairsPerClass << " pairs to "
        << args.outdir.string() << "\n";
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

std::string cosine_matrix_csv(const EmbeddingSequence& a,
                              const EmbeddingSequence& b,
                              std::vector<std::size_t>* zero_rows_a,
                              std::vector<std::size_t>* zero_rows_b) {
  require_same_dim(a, b);
  std::vector<double> norms_a(a.n());
  std::vector<double> norms_b(b.n());
  for (std::size_t r = 0; r < a.n(); ++r) {
    norms_a[r] = squared_norm(a.row(r));
    if (norms_a[r] == 0.0 && zero_rows_a) zero_rows_a->push_back(r + 1);
  }
  for (std::size_t r = 0; r < b.n(); ++r) {
    norms_b[r] = squared_norm(b.row(r));
    if (norms_b[r] == 0.0 && zero_rows_b) zero_rows_b->push_back(r + 1);
  }
  std::string out;
  for (std::size_t r = 0; r < a.n(); ++r) {
    for (std::size_t c = 0; c < b.n(); ++c) {
      double cosine = 0.0;
      if (norms_a[r] > 0.0 && norms_b[c] > 0.0) {
        double dot = 0.0;
        const auto x = a.row(r);
        const auto y = b.row(c);
        for (std::size_t k = 0; k < x.size(); ++k) dot += x[k] * y[k];
        // sqrt(na * nb) rather than sqrt(na) * sqrt(nb): identical rows then
        // give exactly 1.
        cosine = std::clamp(dot / std::sqrt(norms_a[r] * norms_b[c]), -1.0,
                            1.0);
      }
      if (c > 0) out.push_back(',');
      out += io::format_double(cosine);
    }
    out.push_back('\n');
  }
  return out;
}

int cmd_correlate(const std::filesystem::path& audio_path,
                  const std::filesystem::path& text_path,
                  const std::string& out_prefix, std::ostream& log) {
  try {
    const EmbeddingSequence audio = io::read_embedding(audio_path);
    const EmbeddingSequence text = io::read_embedding(text_path);
    require_same_dim(audio, text);

    std::vector<std::size_t> zero_text;
    std::vector<std::size_t> zero_audio;
    const std::string text_audio =
        cosine_matrix_csv(text, audio, &zero_text, &zero_audio);
    const std::string audio_audio =
        cosine_matrix_csv(audio, audio, nullptr, nullptr);
    for (std::size_t r : zero_text) {
      log << "warning: text row " << r << " has zero norm; emitted as 0\n";
    }
    for (std::size_t r : zero_audio) {
      log << "warning: audio row " << r << " has zero norm; emitted as 0\n";
    }
    io::write_file(out_prefix + ".text_audio.csv", text_audio);
    io::write_file(out_prefix + ".audio_audio.csv", audio_audio);

    const AlignmentOutcome outcome = dsp_align(audio, text);
    nlohmann::ordered_json j;
    j["boundaries"] = outcome.boundaries.cuts();
    j["chunk_sizes"] = outcome.boundaries.chunk_sizes();
    j["cost"] = outcome.cost;
    io::write_file(out_prefix + ".boundaries.json", j.dump() + "\n");
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_bench(const BenchArgs& args, std::ostream& log) {
  if (args.ns.empty() || args.ms.empty() || args.dim == 0 ||
      args.repeats == 0) {
    log << "error: bench needs nonempty --n/--m and positive --dim/--repeats\n";
    return 1;
  }
  std::ostringstream table;
  table << "n,m,d,repeats,median_seconds\n";
  TimingOptions opts;
  opts.exec = args.serial ? Execution::kSerial : Execution::kParallel;
  opts.cost_only = args.cost_only;
  for (std::size_t n : args.ns) {
    for (std::size_t m : args.ms) {
      if (n == 0 || m == 0) {
        log << "error: sizes must be positive\n";
        return 1;
      }
      if (m > n) {
        log << "warning: skipping n=" << n << ", m=" << m << " (m > n)\n";
        continue;
      }
      const double secs =
          median_align_seconds(n, m, args.dim, args.repeats, opts);
      table << n << ',' << m << ',' << args.dim << ',' << args.repeats << ','
            << io::format_double(secs) << '\n';
    }
  }
  try {
    emit(args.out, table.str());
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace seqpart::cli
