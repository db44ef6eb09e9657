/*
 * Copyright 2026 The verdict Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "support.hpp"
#include "verdict/corpus.hpp"

using namespace verdict;
using testsupport::TempDir;
using testsupport::make_record;

namespace {

std::string jsonl_line(const std::string& id, const std::string& construct,
                       const std::string& rationale, const std::string& correct) {
  return "{\"record_id\":\"" + id + "\",\"predicted_construct\":\"" + construct +
         "\",\"rationale\":\"" + rationale +
         "\",\"source_model\":\"m\",\"is_correct\":" + correct + "}\n";
}

}  // namespace

TEST_CASE("construct labels round-trip exactly") {
  const std::vector<std::string> canonical = {
      "KeepingEveryoneTogether", "GettingStudentsToRelate", "Restating",
      "PressingForAccuracy",     "Revoicing",               "PressingForReasoning",
      "None"};
  for (const auto& name : canonical) {
    const auto label = ConstructLabel::parse(name);
    CHECK_FALSE(label.is_other());
    CHECK(label.str() == name);
  }
  // Anything else round-trips verbatim through Other.
  for (const std::string s :
       {"Pressing for Accuracy", "restating", "new-construct", "", "Révoicing"}) {
    const auto label = ConstructLabel::parse(s);
    CHECK(label.is_other());
    CHECK(label.str() == s);
  }
  CHECK_FALSE(ConstructLabel::parse_known("Pressing for Accuracy").has_value());
  CHECK(ConstructLabel::parse_known("Revoicing").has_value());
}

TEST_CASE("jsonl ingest drops empty rationales and reports them") {
  TempDir dir;
  std::string body = jsonl_line("a", "Restating", "repeats the answer", "true");
  body += jsonl_line("b", "Revoicing", "   ", "false");
  body += jsonl_line("c", "None", "no move present", "0");
  testsupport::write_file(dir.file("c.jsonl"), body);

  const auto [corpus, summary] =
      load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl);
  CHECK(corpus.size() == 2);
  CHECK(summary.total_rows == 3);
  CHECK(summary.ingested == 2);
  CHECK(summary.dropped_empty_rationale == 1);
  CHECK(summary.correct == 1);
  CHECK(summary.incorrect == 1);
  const auto [neg, pos] = corpus.class_counts();
  CHECK(neg + pos == corpus.size());
}

TEST_CASE("is_correct accepts the documented encodings only") {
  TempDir dir;
  std::string body;
  body += jsonl_line("a", "None", "x y", "true");
  body += jsonl_line("b", "None", "x y", "\"TRUE\"");
  body += jsonl_line("c", "None", "x y", "1");
  body += jsonl_line("d", "None", "x y", "\"0\"");
  body += jsonl_line("e", "None", "x y", "\"False\"");
  testsupport::write_file(dir.file("ok.jsonl"), body);
  const auto [corpus, summary] = load_corpus(dir.file("ok.jsonl"), CorpusFormat::jsonl);
  REQUIRE(corpus.size() == 5);
  CHECK(corpus.records[0].is_correct);
  CHECK(corpus.records[1].is_correct);
  CHECK(corpus.records[2].is_correct);
  CHECK_FALSE(corpus.records[3].is_correct);
  CHECK_FALSE(corpus.records[4].is_correct);

  testsupport::write_file(dir.file("bad.jsonl"),
                          jsonl_line("a", "None", "x", "\"yes\""));
  try {
    load_corpus(dir.file("bad.jsonl"), CorpusFormat::jsonl);
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_row);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("missing file and missing keys are ingest errors") {
  TempDir dir;
  try {
    load_corpus(dir.file("nope.jsonl"), CorpusFormat::jsonl);
    FAIL("expected FileNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::file_not_found);
  }
  testsupport::write_file(dir.file("m.jsonl"),
                          "{\"record_id\":\"a\",\"rationale\":\"x\"}\n");
  try {
    load_corpus(dir.file("m.jsonl"), CorpusFormat::jsonl);
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_row);
  }
}

TEST_CASE("unknown labels reject when Other is disabled") {
  TempDir dir;
  testsupport::write_file(dir.file("c.jsonl"),
                          jsonl_line("a", "SomethingElse", "x y", "1"));
  LoadOptions strict;
  strict.allow_other = false;
  try {
    load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl, strict);
    FAIL("expected UnknownLabel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_label);
    CHECK(std::string(e.what()).find("SomethingElse") != std::string::npos);
  }
  // Default: passes through as Other.
  const auto [corpus, summary] = load_corpus(dir.file("c.jsonl"), CorpusFormat::jsonl);
  CHECK(corpus.records[0].predicted_construct.is_other());
}

TEST_CASE("csv ingest honors rfc-4180 quoting and flags duplicate ids") {
  TempDir dir;
  const std::string csv =
      "record_id,predicted_construct,rationale,source_model,is_correct\n"
      "a,Restating,\"repeats, with \"\"quotes\"\" and\nnewline\",m,1\n"
      "b,Revoicing,plain text,m,0\n";
  testsupport::write_file(dir.file("c.csv"), csv);
  const auto [corpus, summary] = load_corpus(dir.file("c.csv"), CorpusFormat::csv);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus.records[0].rationale == "repeats, with \"quotes\" and\nnewline");

  const std::string dup =
      "record_id,predicted_construct,rationale,source_model,is_correct\n"
      "same,Restating,first,m,1\n"
      "same,Revoicing,second,m,0\n";
  testsupport::write_file(dir.file("dup.csv"), dup);
  try {
    load_corpus(dir.file("dup.csv"), CorpusFormat::csv);
    FAIL("expected MalformedRow for duplicate id");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_row);
    CHECK(std::string(e.what()).find("same") != std::string::npos);
  }
}

TEST_CASE("paper-scale ingest: 30,818 rows with 518 empty rationales") {
  TempDir dir;
  std::ostringstream body;
  for (std::size_t i = 0; i < 30818; ++i) {
    const bool empty = i < 518;
    body << "{\"record_id\":\"r" << i << "\",\"predicted_construct\":\"None\","
         << "\"rationale\":\"" << (empty ? "" : "some reasoning text")
         << "\",\"source_model\":\"m\",\"is_correct\":" << (i % 2 ? "1" : "0")
         << "}\n";
  }
  testsupport::write_file(dir.file("big.jsonl"), body.str());
  const auto [corpus, summary] = load_corpus(dir.file("big.jsonl"), CorpusFormat::jsonl);
  CHECK(corpus.size() == 30300);
  CHECK(summary.dropped_empty_rationale == 518);
}

TEST_CASE("stratified split: exact small case and error contracts") {
  Corpus corpus;
  for (int i = 0; i < 10; ++i)
    corpus.records.push_back(
        make_record("r" + std::to_string(i), "None", "text here", i % 2 == 0));

  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto [train, test] = stratified_split(corpus, 0.2, seed);
    CHECK(train.size() == 8);
    CHECK(test.size() == 2);
    const auto [neg, pos] = test.class_counts();
    CHECK(neg == 1);
    CHECK(pos == 1);
  }

  CHECK_THROWS_AS(stratified_split(corpus, 0.0, 0), Error);
  CHECK_THROWS_AS(stratified_split(corpus, 1.0, 0), Error);
  CHECK_THROWS_AS(stratified_split(Corpus{}, 0.2, 0), Error);
}

TEST_CASE("stratified split is deterministic and conserves records") {
  const Corpus corpus = testsupport::hedge_corpus(501, 7);
  const auto [train_a, test_a] = stratified_split(corpus, 0.3, 11);
  const auto [train_b, test_b] = stratified_split(corpus, 0.3, 11);

  auto ids = [](const Corpus& c) {
    std::vector<std::string> v;
    for (const auto& r : c.records) v.push_back(r.record_id);
    return v;
  };
  CHECK(ids(train_a) == ids(train_b));
  CHECK(ids(test_a) == ids(test_b));

  // Union equals the corpus with no overlap.
  std::set<std::string> all;
  for (const auto& r : train_a.records) all.insert(r.record_id);
  for (const auto& r : test_a.records) all.insert(r.record_id);
  CHECK(all.size() == corpus.size());

  // A different seed moves at least one record.
  const auto [train_c, test_c] = stratified_split(corpus, 0.3, 12);
  CHECK(ids(test_c) != ids(test_a));
}

TEST_CASE("stratified split honors the per-class bound on random corpora") {
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    KeyedRng rng(1234, "split-bound", trial);
    const std::size_t n = 20 + rng.uniform_below(300);
    Corpus corpus;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool correct = rng.uniform() < 0.3;
      n_pos += correct ? 1 : 0;
      corpus.records.push_back(
          make_record("r" + std::to_string(i), "None", "w x y", correct));
    }
    if (n_pos == 0 || n_pos == n) continue;
    const double f = 0.05 + 0.9 * rng.uniform();
    const auto [train, test] = stratified_split(corpus, f, trial);
    const auto [test_neg, test_pos] = test.class_counts();
    const double n_neg = static_cast<double>(n - n_pos);
    CHECK(std::fabs(static_cast<double>(test_pos) - f * static_cast<double>(n_pos)) <=
          1.0 + 1e-9);
    CHECK(std::fabs(static_cast<double>(test_neg) - f * n_neg) <= 1.0 + 1e-9);
    const auto target =
        static_cast<double>(std::llround(f * static_cast<double>(n)));
    CHECK(std::fabs(static_cast<double>(test.size()) - target) <= 1.0 + 1e-9);
  }
}

TEST_CASE("stratified split at paper scale follows the pinned convention") {
  Corpus corpus;
  corpus.records.reserve(30300);
  for (std::size_t i = 0; i < 30300; ++i)
    corpus.records.push_back(make_record("r" + std::to_string(i), "None",
                                         "reasoning words", i % 5 != 0));
  const auto [train, test] = stratified_split(corpus, 0.2, 3);
  // round(0.2 * 30300) = 6060 under the floor-plus-largest-remainder rule.
  CHECK(test.size() == 6060);
  CHECK(train.size() == 24240);
  const auto [test_neg, test_pos] = test.class_counts();
  CHECK(std::fabs(static_cast<double>(test_pos) - 0.2 * 24240.0) <= 1.0);
  CHECK(std::fabs(static_cast<double>(test_neg) - 0.2 * 6060.0) <= 1.0);
}

TEST_CASE("partition by construct groups every record exactly once") {
  Corpus corpus;
  corpus.records.push_back(make_record("a", "Restating", "x", true));
  corpus.records.push_back(make_record("b", "Restating", "y", false));
  corpus.records.push_back(make_record("c", "Revoicing", "z", true));
  const auto parts = partition_by_construct(corpus);
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(ConstructLabel::parse("Restating")).size() == 2);
  CHECK(parts.at(ConstructLabel::parse("Revoicing")).size() == 1);

  // Brute-force oracle on a 1,000-record synthetic corpus: partition sizes
  // sum to N and the (key, member) pairs are a bijection with the records.
  const Corpus big = testsupport::hedge_corpus(1000, 3);
  std::map<std::string, std::size_t> expected;
  for (const auto& r : big.records) expected[r.predicted_construct.str()]++;
  const auto big_parts = partition_by_construct(big);
  std::size_t total = 0;
  std::set<std::string> seen_ids;
  for (const auto& [label, part] : big_parts) {
    total += part.size();
    CHECK(part.size() == expected.at(label.str()));
    for (const auto& r : part.records) {
      CHECK(r.predicted_construct == label);
      CHECK(seen_ids.insert(r.record_id).second);
    }
  }
  CHECK(total == big.size());
  CHECK(seen_ids.size() == big.size());
}

TEST_CASE("jsonl write/load round-trips a corpus") {
  TempDir dir;
  Corpus corpus;
  corpus.records.push_back(
      make_record("a", "Restating", "says \"no\" twice,\nthen stops", true));
  corpus.records.push_back(make_record("b", "Other construct", "x y z", false));
  {
    std::ofstream out(dir.file("rt.jsonl"), std::ios::binary);
    write_jsonl(corpus, out);
  }
  const auto [loaded, summary] = load_corpus(dir.file("rt.jsonl"), CorpusFormat::jsonl);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded.records[0].rationale == corpus.records[0].rationale);
  CHECK(loaded.records[1].predicted_construct.str() == "Other construct");
}
