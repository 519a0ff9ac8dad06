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

#include <cstring>
#include <filesystem>

#include "doctest.h"
#include "seqpart/io.hpp"
#include "test_util.hpp"

using namespace seqpart;

namespace {

std::vector<char> bytes_of(std::initializer_list<int> values) {
  std::vector<char> out;
  for (int v : values) out.push_back(static_cast<char>(v));
  return out;
}

EmbeddingSequence float32_seq(std::size_t n, std::size_t d, SplitMix64& rng) {
  std::vector<double> data(n * d);
  for (double& v : data) {
    v = static_cast<float>(200.0 * rng.uniform() - 100.0);
  }
  return EmbeddingSequence(n, d, std::move(data));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected seqpart::Error");
  return ErrorCode::kInvalidInput;
}

}  // namespace

TEST_CASE("binary layout is bit exact") {
  const auto seq = EmbeddingSequence::from_rows({{1.0, -2.0}});
  const auto bytes = io::encode_binary(seq);
  // "EMB1", n = 1, d = 2, then 1.0f = 0x3F800000 and -2.0f = 0xC0000000.
  CHECK(bytes == bytes_of({0x45, 0x4D, 0x42, 0x31, 1, 0, 0, 0, 2, 0, 0, 0, 0,
                           0, 0x80, 0x3F, 0, 0, 0, 0xC0}));
  CHECK(io::decode_binary(bytes) == seq);
}

TEST_CASE("binary decoding rejects malformed payloads") {
  auto good = io::encode_binary(EmbeddingSequence::from_rows({{1.0}, {2.0}}));
  auto truncated = good;
  truncated.pop_back();
  auto padded = good;
  padded.push_back(0);
  auto bad_magic = good;
  bad_magic[3] = '2';
  CHECK(code_of([&] { io::decode_binary(truncated); }) == ErrorCode::kFormat);
  CHECK(code_of([&] { io::decode_binary(padded); }) == ErrorCode::kFormat);
  CHECK(code_of([&] { io::decode_binary(bad_magic); }) == ErrorCode::kFormat);
  CHECK(code_of([&] { io::decode_binary(bytes_of({0x45, 0x4D})); }) ==
        ErrorCode::kFormat);
  // n = 0 is a valid header but not a valid sequence.
  CHECK(code_of([&] {
          io::decode_binary(bytes_of({0x45, 0x4D, 0x42, 0x31, 0, 0, 0, 0, 1, 0,
                                      0, 0}));
        }) == ErrorCode::kInvalidInput);
  // NaN payload.
  CHECK(code_of([&] {
          io::decode_binary(bytes_of({0x45, 0x4D, 0x42, 0x31, 1, 0, 0, 0, 1, 0,
                                      0, 0, 0, 0, 0xC0, 0x7F}));
        }) == ErrorCode::kNonFinite);
}

TEST_CASE("binary round trip is bit identical for float32 data") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto seq = float32_seq(1 + rng.below(40), 1 + rng.below(20), rng);
    CHECK(io::decode_binary(io::encode_binary(seq)) == seq);
    CHECK(io::decode_csv(io::encode_csv(seq)) == seq);
  }
}

TEST_CASE("csv parsing") {
  const auto seq = io::decode_csv("1, 2.5,-3\n4,5,6e-1\r\n\n");
  CHECK(seq.n() == 2);
  CHECK(seq.d() == 3);
  CHECK(seq.row(0)[1] == 2.5);
  CHECK(seq.row(1)[2] == static_cast<double>(0.6f));
  CHECK(code_of([] { io::decode_csv("1,2\n3\n"); }) == ErrorCode::kFormat);
  CHECK(code_of([] { io::decode_csv("1,abc\n"); }) == ErrorCode::kFormat);
  CHECK(code_of([] { io::decode_csv("1,,2\n"); }) == ErrorCode::kFormat);
  CHECK(code_of([] { io::decode_csv(""); }) == ErrorCode::kFormat);
  CHECK(code_of([] { io::decode_csv("1,nan\n"); }) == ErrorCode::kNonFinite);
}

TEST_CASE("csv and binary files load to the same matrix") {
  const auto dir = std::filesystem::temp_directory_path() / "seqpart_io_test";
  std::filesystem::create_directories(dir);
  SplitMix64 rng(2);
  const auto seq = float32_seq(7, 5, rng);
  io::write_embedding_binary(dir / "a.emb", seq);
  io::write_embedding_csv(dir / "a.csv", seq);
  CHECK(io::read_embedding(dir / "a.emb") == seq);
  CHECK(io::read_embedding(dir / "a.csv") == seq);
  CHECK(code_of([&] { io::read_embedding(dir / "missing.emb"); }) ==
        ErrorCode::kIo);
  std::filesystem::remove_all(dir);
}

TEST_CASE("manifest parsing") {
  const auto recs = io::parse_manifest(
      "{\"id\":\"a\",\"audio_path\":\"x/a.emb\",\"text_path\":\"/abs/t.emb\","
      "\"label\":1}\n\n"
      "{\"id\":\"b\",\"audio_path\":\"b.emb\",\"text_path\":\"t.emb\","
      "\"label\":0}\n",
      "/base");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].audio_path == std::filesystem::path("/base/x/a.emb"));
  CHECK(recs[0].text_path == std::filesystem::path("/abs/t.emb"));
  CHECK(recs[1].label == 0);

  const std::string dup =
      "{\"id\":\"a\",\"audio_path\":\"a\",\"text_path\":\"t\",\"label\":1}\n"
      "{\"id\":\"a\",\"audio_path\":\"b\",\"text_path\":\"t\",\"label\":0}\n";
  CHECK(code_of([&] { io::parse_manifest(dup, "."); }) == ErrorCode::kFormat);
  CHECK(code_of([] {
          io::parse_manifest(
              "{\"id\":\"a\",\"audio_path\":\"a\",\"text_path\":\"t\","
              "\"label\":3}",
              ".");
        }) == ErrorCode::kFormat);
  CHECK(code_of([] { io::parse_manifest("{\"id\":\"a\"}", "."); }) ==
        ErrorCode::kFormat);
  CHECK(code_of([] { io::parse_manifest("not json", "."); }) ==
        ErrorCode::kFormat);

  CHECK(io::manifest_line({"q", "a.emb", "t.emb", 1}) ==
        "{\"id\":\"q\",\"audio_path\":\"a.emb\",\"text_path\":\"t.emb\","
        "\"label\":1}");
}

TEST_CASE("score records keep their key order") {
  const io::ScoreRecord rec{"ep1", 0.25, {1, 3, 4}, 1, "dsp"};
  const std::string line = io::score_line(rec);
  CHECK(line ==
        "{\"id\":\"ep1\",\"cost\":0.25,\"boundaries\":[1,3,4],\"label\":1,"
        "\"scheme\":\"dsp\"}");
  const auto back = io::parse_scores(line + "\n");
  REQUIRE(back.size() == 1);
  CHECK(back[0].cost == 0.25);
  CHECK(back[0].boundaries == std::vector<std::size_t>{1, 3, 4});
  CHECK(code_of([] {
          io::parse_scores(
              "{\"id\":\"x\",\"cost\":1,\"boundaries\":[1,1],\"label\":1}");
        }) == ErrorCode::kFormat);
  CHECK(code_of([] { io::parse_scores("{\"id\":\"x\",\"label\":1}"); }) ==
        ErrorCode::kFormat);
}

TEST_CASE("report json") {
  const std::string json = io::report_json({0.75, 0.5, 0.4, 2, 2});
  CHECK(json.find("\"auc\": 0.75") != std::string::npos);
  CHECK(json.find("\"eer\"") < json.find("\"eer_threshold\""));
  CHECK(json.find("\"n_neg\": 2") != std::string::npos);
}
