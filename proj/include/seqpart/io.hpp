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

#ifndef SEQPART_IO_HPP
#define SEQPART_IO_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqpart/core.hpp"
#include "seqpart/metrics.hpp"

namespace seqpart::io {

/// Binary embedding files start with these four bytes ("EMB1").
inline constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

// Binary layout: magic, u32 n, u32 d (little-endian), then n*d float32 LE
// values row-major. The payload length must match n*d exactly.
std::vector<char> encode_binary(const EmbeddingSequence& seq);
EmbeddingSequence decode_binary(std::span<const char> bytes);

/// One row per line, comma separated, no header. Values are rounded to
/// float32 on load so CSV and binary copies of a matrix compare equal.
std::string encode_csv(const EmbeddingSequence& seq);
EmbeddingSequence decode_csv(std::string_view text);

/// Loads either format; binary is recognised by its magic bytes.
EmbeddingSequence read_embedding(const std::filesystem::path& path);
void write_embedding_binary(const std::filesystem::path& path,
                            const EmbeddingSequence& seq);
void write_embedding_csv(const std::filesystem::path& path,
                         const EmbeddingSequence& seq);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

struct ManifestRecord {
  std::string id;
  std::filesystem::path audio_path;
  std::filesystem::path text_path;
  int label;
};

/// JSON lines: {"id": ..., "audio_path": ..., "text_path": ..., "label": 0|1}.
/// Relative paths resolve against `base_dir`. Blank lines are ignored.
std::vector<ManifestRecord> parse_manifest(
    std::string_view text, const std::filesystem::path& base_dir);
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);
std::string manifest_line(const ManifestRecord& record);

struct ScoreRecord {
  std::string id;
  double cost;
  std::vector<std::size_t> boundaries;  // 1-based cuts
  int label;
  std::string scheme;
};

/// Serialises with keys in the order id, cost, boundaries, label, scheme.
std::string score_line(const ScoreRecord& record);
std::vector<ScoreRecord> parse_scores(std::string_view text);

std::string report_json(const EvalReport& report);

/// Shortest decimal form that round-trips the double.
std::string format_double(double x);

}  // namespace seqpart::io

#endif  // SEQPART_IO_HPP
