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

#include <regex>

#include "support.hpp"
#include "verdict/lexicon.hpp"
#include "verdict/linguistics.hpp"
#include "verdict/stats.hpp"

using namespace verdict;
using Catch::Matchers::WithinAbs;
using testsupport::TempDir;
using testsupport::make_record;

TEST_CASE("lexicon files parse with validation") {
  TempDir dir;
  testsupport::write_file(dir.file("lex.toml"),
                          "# comment\n"
                          "[Causation]\n"
                          "because, therefore, implies\n"
                          "\n"
                          "[Stems]\n"
                          "caus*, explain*\n");
  const Lexicon lex = load_lexicon(dir.file("lex.toml"));
  REQUIRE(lex.category_names() ==
          std::vector<std::string>{"Causation", "Stems"});
  CHECK(lex.patterns("Causation").size() == 3);

  // Wildcard semantics: terminal stem match.
  TokenStream toks;
  toks.tokens = {"causes", "causal", "caused", "because", "why"};
  CHECK(lex.matches_in("Stems", toks) == 3);
  CHECK(lex.matches_in("Causation", toks) == 1);

  // Empty category section is malformed.
  testsupport::write_file(dir.file("empty.toml"), "[Empty]\n\n[Other]\nx\n");
  try {
    load_lexicon(dir.file("empty.toml"));
    FAIL("expected MalformedLexicon");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_lexicon);
  }

  // Duplicate category names are rejected.
  testsupport::write_file(dir.file("dup.toml"), "[A]\nx\n[A]\ny\n");
  try {
    load_lexicon(dir.file("dup.toml"));
    FAIL("expected DuplicateCategory");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_category);
  }

  // Wildcards must be terminal.
  testsupport::write_file(dir.file("star.toml"), "[A]\nca*se\n");
  CHECK_THROWS_AS(load_lexicon(dir.file("star.toml")), Error);

  CHECK_THROWS_AS(load_lexicon(dir.file("missing.toml")), Error);
}

TEST_CASE("shipped default lexicon matches the builtin") {
  const Lexicon from_file =
      load_lexicon(testsupport::data_dir() + "/lexicon_default.toml");
  const Lexicon& builtin = default_lexicon();
  REQUIRE(from_file.category_names() == builtin.category_names());
  for (const auto& cat : builtin.category_names()) {
    const auto& a = from_file.patterns(cat);
    const auto& b = builtin.patterns(cat);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].stem == b[i].stem);
      CHECK(a[i].wildcard == b[i].wildcard);
    }
  }
  CHECK(builtin.category_names() ==
        std::vector<std::string>{"Causation", "Differentiation", "Tentativeness",
                                 "Insight"});
}

TEST_CASE("density is matches per 100 words") {
  // 20 words, one "because", one "therefore" -> Causation density 10.
  const std::string text =
      "the class heard because the lesson moved on and therefore the "
      "group wrote answers on their boards before lunch began";
  const auto prof = density(text, default_lexicon(), "rec");
  CHECK(prof.word_count == 20);
  CHECK_THAT(prof.density.at("Causation"), WithinAbs(10.0, 1e-12));

  // Empty text: flagged, all densities zero.
  const auto empty = density("", default_lexicon());
  CHECK(empty.zero_words);
  for (const auto& [cat, d] : empty.density) CHECK(d == 0.0);

  // Stop-words count toward length: "the" stays in the denominator.
  CHECK(density("the the because", default_lexicon()).word_count == 3);
}

TEST_CASE("density agrees with an independent regex count") {
  const Lexicon& lex = default_lexicon();
  std::vector<std::string> vocab = {"lesson", "might",  "because", "think",
                                    "board",  "could",  "however", "answer",
                                    "number", "possibly"};
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    KeyedRng rng(99, "regex-oracle", trial);
    std::string text;
    const std::size_t len = 30 + rng.uniform_below(40);
    for (std::size_t i = 0; i < len; ++i) {
      if (i) text += ' ';
      text += vocab[rng.uniform_below(vocab.size())];
    }
    const auto prof = density(text, lex, "t");
    REQUIRE(prof.word_count == len);
    for (const auto& cat : lex.category_names()) {
      std::size_t regex_count = 0;
      for (const auto& p : lex.patterns(cat)) {
        const std::string pat = p.wildcard
                                    ? "\\b" + p.stem + "[a-z]*\\b"
                                    : "\\b" + p.stem + "\\b";
        const std::regex re(pat);
        regex_count += static_cast<std::size_t>(std::distance(
            std::sregex_iterator(text.begin(), text.end(), re),
            std::sregex_iterator()));
      }
      const double expected =
          100.0 * static_cast<double>(regex_count) / static_cast<double>(len);
      CHECK_THAT(prof.density.at(cat), WithinAbs(expected, 1e-12));
    }
  }
}

TEST_CASE("density is invariant under self-concatenation") {
  const std::string text = "she might think because the answer could differ";
  const auto once = density(text, default_lexicon());
  const auto twice = density(text + " " + text, default_lexicon());
  for (const auto& [cat, d] : once.density)
    CHECK_THAT(twice.density.at(cat), WithinAbs(d, 1e-12));
}

TEST_CASE("a token may count toward multiple categories") {
  Lexicon lex;
  lex.add_category("A", {"shared"});
  lex.add_category("B", {"shared", "other"});
  const auto prof = density("shared words here", lex);
  CHECK(prof.matches.at("A") == 1);
  CHECK(prof.matches.at("B") == 1);
}

TEST_CASE("welch test behaves at the extremes") {
  std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  const auto same = stats::welch_t_test(a, a);
  CHECK_THAT(same.p_value, WithinAbs(1.0, 1e-12));
  CHECK_THAT(same.t, WithinAbs(0.0, 1e-12));

  // Zero-variance identical constants.
  std::vector<double> c1 = {2.0, 2.0, 2.0};
  CHECK(stats::welch_t_test(c1, c1).p_value == 1.0);
  std::vector<double> c2 = {3.0, 3.0, 3.0};
  CHECK(stats::welch_t_test(c1, c2).p_value == 0.0);

  CHECK_THROWS_AS(stats::welch_t_test({}, a), Error);
}

TEST_CASE("welch test agrees with the z approximation on planted shifts") {
  std::vector<double> g1, g2;
  KeyedRng rng(7, "welch-planted");
  for (int i = 0; i < 200; ++i) {
    g1.push_back(1.0 + 0.1 * rng.normal());
    g2.push_back(2.0 + 0.1 * rng.normal());
  }
  const auto r = stats::welch_t_test(g2, g1);
  CHECK(r.p_value < 1e-6);

  // Closed-form z oracle: t should match (mean diff)/se for large n.
  const double se = std::sqrt(stats::variance(g1) / 200.0 +
                              stats::variance(g2) / 200.0);
  const double z = (stats::mean(g2) - stats::mean(g1)) / se;
  CHECK_THAT(r.t, WithinAbs(z, 1e-9));
  CHECK(r.df > 100.0);
}

TEST_CASE("mann-whitney is symmetric and handles ties") {
  std::vector<double> a = {3.0, 5.0, 9.0, 12.0};
  const auto same = stats::mann_whitney_u(a, a);
  CHECK_THAT(same.p_value, WithinAbs(1.0, 1e-9));

  // Clearly separated samples give a small p.
  std::vector<double> lo = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> hi = {11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  CHECK(stats::mann_whitney_u(lo, hi).p_value < 0.001);

  // All ties collapse the variance; p resolves to 1.
  std::vector<double> flat1 = {5, 5, 5};
  std::vector<double> flat2 = {5, 5, 5, 5};
  CHECK(stats::mann_whitney_u(flat1, flat2).p_value == 1.0);
}

TEST_CASE("holm adjustment matches a hand-worked example") {
  // Sorted: .01 .02 .03 .04 -> multipliers 4,3,2,1, running max.
  const auto adj = stats::holm_adjust({0.04, 0.01, 0.03, 0.02});
  REQUIRE(adj.size() == 4);
  CHECK_THAT(adj[1], WithinAbs(0.04, 1e-12));  // 0.01 * 4
  CHECK_THAT(adj[3], WithinAbs(0.06, 1e-12));  // 0.02 * 3
  CHECK_THAT(adj[2], WithinAbs(0.06, 1e-12));  // max(0.03*2, prior)
  CHECK_THAT(adj[0], WithinAbs(0.06, 1e-12));  // max(0.04*1, prior)
  CHECK(stats::holm_adjust({0.9, 0.8}).back() <= 1.0);
}

TEST_CASE("quantiles interpolate linearly") {
  std::vector<double> x = {2.0, 4.0, 6.0};
  CHECK_THAT(stats::quantile(x, 0.5), WithinAbs(4.0, 1e-12));
  CHECK_THAT(stats::quantile(x, 0.25), WithinAbs(3.0, 1e-12));
  CHECK_THAT(stats::quantile(x, 0.75), WithinAbs(5.0, 1e-12));
  CHECK_THAT(stats::quantile({7.0}, 0.9), WithinAbs(7.0, 1e-12));
}

TEST_CASE("compare_groups on identical groups straddles zero") {
  Corpus corpus;
  for (int i = 0; i < 40; ++i) {
    const std::string text =
        (i % 4 == 0) ? "might be because of this" : "the answer is shown";
    corpus.records.push_back(
        make_record("a" + std::to_string(i), "None", text, true));
    corpus.records.push_back(
        make_record("b" + std::to_string(i), "None", text, false));
  }
  const auto gc = compare_groups(corpus, default_lexicon(), "Tentativeness",
                                 200, 17);
  CHECK_THAT(gc.difference, WithinAbs(0.0, 1e-12));
  CHECK(gc.p_value > 0.99);
  CHECK(gc.ci_low <= 0.0);
  CHECK(gc.ci_high >= 0.0);
  CHECK(gc.n_correct == 40);
  CHECK(gc.n_incorrect == 40);
}

TEST_CASE("compare_groups detects a planted density shift deterministically") {
  Corpus corpus;
  KeyedRng rng(23, "planted-shift");
  for (int i = 0; i < 200; ++i) {
    // Correct rationales carry two causal markers; filler length varies so
    // the bootstrap distribution is not degenerate.
    std::string pad;
    const std::size_t extra = rng.uniform_below(6);
    for (std::size_t w = 0; w < extra; ++w) pad += " word";
    corpus.records.push_back(make_record(
        "c" + std::to_string(i), "None",
        "because the sum grows therefore the result follows here now" + pad,
        true));
    corpus.records.push_back(make_record(
        "i" + std::to_string(i), "None",
        "the sum grows and the result follows from lines here" + pad, false));
  }
  const auto gc =
      compare_groups(corpus, default_lexicon(), "Causation", 300, 5);
  CHECK(gc.mean_correct > gc.mean_incorrect);
  CHECK(gc.p_value < 1e-6);
  CHECK(gc.ci_low > 0.0);

  const auto again =
      compare_groups(corpus, default_lexicon(), "Causation", 300, 5);
  CHECK(gc.ci_low == again.ci_low);
  CHECK(gc.ci_high == again.ci_high);
  const auto other =
      compare_groups(corpus, default_lexicon(), "Causation", 300, 6);
  CHECK((other.ci_low != gc.ci_low || other.ci_high != gc.ci_high));

  // Contract checks.
  CHECK_THROWS_AS(
      compare_groups(corpus, default_lexicon(), "Causation", 50, 5), Error);
  Corpus single;
  single.records.push_back(make_record("x", "None", "w", true));
  CHECK_THROWS_AS(
      compare_groups(single, default_lexicon(), "Causation", 200, 5), Error);
}

TEST_CASE("length_stats reports quartiles and rank-sum tests") {
  Corpus corpus;
  corpus.records.push_back(make_record("a", "Restating", "one two", true));
  corpus.records.push_back(make_record("b", "Restating", "one two three four", true));
  corpus.records.push_back(
      make_record("c", "Restating", "one two three four five six", true));
  corpus.records.push_back(make_record("d", "Restating", "one two", false));
  corpus.records.push_back(make_record("e", "Restating", "one two three four", false));
  corpus.records.push_back(
      make_record("f", "Restating", "one two three four five six", false));

  const auto report = length_stats(corpus, true);
  const LengthGroupStats* pooled_correct = nullptr;
  for (const auto& g : report.groups)
    if (g.construct.empty() && g.is_correct) pooled_correct = &g;
  REQUIRE(pooled_correct != nullptr);
  CHECK(pooled_correct->n == 3);
  CHECK_THAT(pooled_correct->summary.median, WithinAbs(4.0, 1e-12));
  CHECK_THAT(pooled_correct->summary.q1, WithinAbs(3.0, 1e-12));
  CHECK_THAT(pooled_correct->summary.q3, WithinAbs(5.0, 1e-12));

  // Identical length distributions: rank-sum p resolves to 1.
  for (const auto& t : report.tests) {
    REQUIRE(t.p_value.has_value());
    CHECK_THAT(*t.p_value, WithinAbs(1.0, 1e-9));
  }

  // Singleton groups omit the p-value.
  Corpus tiny;
  tiny.records.push_back(make_record("a", "None", "one two", true));
  tiny.records.push_back(make_record("b", "None", "one two three", false));
  const auto tiny_report = length_stats(tiny, false);
  REQUIRE(tiny_report.tests.size() == 1);
  CHECK_FALSE(tiny_report.tests[0].p_value.has_value());

  CHECK_THROWS_AS(length_stats(Corpus{}, false), Error);
}

TEST_CASE("welch p-values look uniform under the null (small smoke)") {
  std::vector<double> pvals;
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    std::vector<double> a, b;
    KeyedRng rng(31, "welch-null", trial);
    for (int i = 0; i < 150; ++i) {
      a.push_back(rng.normal());
      b.push_back(rng.normal());
    }
    pvals.push_back(stats::welch_t_test(a, b).p_value);
  }
  const double d = stats::ks_statistic_uniform(pvals);
  // Asymptotic 1% critical value 1.628/sqrt(n).
  CHECK(d < 1.628 / std::sqrt(60.0));
}
