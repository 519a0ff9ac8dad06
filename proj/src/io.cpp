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

#include "seqpart/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"

namespace seqpart::io {

namespace {

using ordered_json = nlohmann::ordered_json;

void put_u32(std::vector<char>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint32_t get_u32(std::span<const char> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + b]))
         << (8 * b);
  }
  return v;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    ++line_no;
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

Error format_error(std::size_t line_no, const std::string& what) {
  return Error(ErrorCode::kFormat,
               "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::vector<char> encode_binary(const EmbeddingSequence& seq) {
  std::vector<char> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(12 + seq.data().size() * 4);
  put_u32(out, static_cast<std::uint32_t>(seq.n()));
  put_u32(out, static_cast<std::uint32_t>(seq.d()));
  for (double v : seq.data()) {
    put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

EmbeddingSequence decode_binary(std::span<const char> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kFormat, "missing EMB1 header");
  }
  const std::uint64_t n = get_u32(bytes, 4);
  const std::uint64_t d = get_u32(bytes, 8);
  const std::uint64_t expected = n * d * 4;
  if (bytes.size() - 12 != expected) {
    std::ostringstream msg;
    msg << "header declares " << n << "x" << d << " floats (" << expected
        << " bytes) but payload has " << bytes.size() - 12 << " bytes";
    throw Error(ErrorCode::kFormat, msg.str());
  }
  std::vector<double> data(n * d);
  for (std::size_t k = 0; k < data.size(); ++k) {
    data[k] = std::bit_cast<float>(get_u32(bytes, 12 + 4 * k));
  }
  return EmbeddingSequence(n, d, std::move(data));
}

std::string encode_csv(const EmbeddingSequence& seq) {
  std::string out;
  char buf[32];
  for (std::size_t r = 0; r < seq.n(); ++r) {
    const auto row = seq.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto res = std::to_chars(buf, buf + sizeof(buf),
                                     static_cast<float>(row[c]));
      if (c > 0) out.push_back(',');
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingSequence decode_csv(std::string_view text) {
  std::vector<double> data;
  std::size_t d = 0;
  std::size_t n = 0;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    line = trim(line);
    if (line.empty()) return;
    std::size_t fields = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      const std::string_view field = trim(line.substr(0, comma));
      // strtod accepts the leading '+' and "inf"/"nan" spellings that
      // from_chars rejects; the latter are caught by EmbeddingSequence.
      const std::string owned(field);
      char* end = nullptr;
      const double v = std::strtod(owned.c_str(), &end);
      if (owned.empty() || end != owned.c_str() + owned.size()) {
        throw format_error(line_no, "bad number '" + owned + "'");
      }
      data.push_back(static_cast<double>(static_cast<float>(v)));
      ++fields;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (n == 0) {
      d = fields;
    } else if (fields != d) {
      throw format_error(line_no, "expected " + std::to_string(d) +
                                      " fields, found " +
                                      std::to_string(fields));
    }
    ++n;
  });
  if (n == 0) throw Error(ErrorCode::kFormat, "CSV embedding file is empty");
  return EmbeddingSequence(n, d, std::move(data));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

EmbeddingSequence read_embedding(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
      return decode_binary(bytes);
    }
    return decode_csv(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_embedding_binary(const std::filesystem::path& path,
                            const EmbeddingSequence& seq) {
  const auto bytes = encode_binary(seq);
  write_file(path, {bytes.data(), bytes.size()});
}

void write_embedding_csv(const std::filesystem::path& path,
                         const EmbeddingSequence& seq) {
  write_file(path, encode_csv(seq));
}

std::vector<ManifestRecord> parse_manifest(
    std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<ManifestRecord> records;
  std::set<std::string> seen;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (trim(line).empty()) return;
    ManifestRecord rec;
    try {
      const auto j = nlohmann::json::parse(line);
      rec.id = j.at("id").get<std::string>();
      rec.audio_path = j.at("audio_path").get<std::string>();
      rec.text_path = j.at("text_path").get<std::string>();
      rec.label = j.at("label").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw format_error(line_no, e.what());
    }
    if (rec.label != 0 && rec.label != 1) {
      throw format_error(line_no, "label must be 0 or 1");
    }
    if (!seen.insert(rec.id).second) {
      throw format_error(line_no, "duplicate id '" + rec.id + "'");
    }
    if (rec.audio_path.is_relative()) rec.audio_path = base_dir / rec.audio_path;
    if (rec.text_path.is_relative()) rec.text_path = base_dir / rec.text_path;
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path());
}

std::string manifest_line(const ManifestRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["audio_path"] = record.audio_path.generic_string();
  j["text_path"] = record.text_path.generic_string();
  j["label"] = record.label;
  return j.dump();
}

std::string score_line(const ScoreRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["cost"] = record.cost;
  j["boundaries"] = record.boundaries;
  j["label"] = record.label;
  j["scheme"] = record.scheme;
  return j.dump();
}

std::vector<ScoreRecord> parse_scores(std::string_view text) {
  std::vector<ScoreRecord> records;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (trim(line).empty()) return;
    ScoreRecord rec;
    try {
      const auto j = nlohmann::json::parse(line);
      rec.id = j.at("id").get<std::string>();
      rec.cost = j.at("cost").get<double>();
      rec.label = j.at("label").get<int>();
      if (j.contains("boundaries")) {
        rec.boundaries = j.at("boundaries").get<std::vector<std::size_t>>();
      }
      if (j.contains("scheme")) rec.scheme = j.at("scheme").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw format_error(line_no, e.what());
    }
    if (rec.label != 0 && rec.label != 1) {
      throw format_error(line_no, "label must be 0 or 1");
    }
    if (!rec.boundaries.empty()) {
      try {
        PartitionBoundaries(rec.boundaries, rec.boundaries.back() - 1);
      } catch (const Error& e) {
        throw format_error(line_no, e.what());
      }
    }
    records.push_back(std::move(rec));
  });
  return records;
}

std::string report_json(const EvalReport& report) {
  ordered_json j;
  j["auc"] = report.auc;
  j["eer"] = report.eer;
  j["eer_threshold"] = report.eer_threshold;
  j["n_pos"] = report.n_pos;
  j["n_neg"] = report.n_neg;
  return j.dump(2);
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace seqpart::io
