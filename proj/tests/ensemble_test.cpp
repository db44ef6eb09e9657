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

#include <cmath>

#include "support.hpp"
#include "verdict/classifier.hpp"

using namespace verdict;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<SparseVector> featurize(const Corpus& corpus, const TfidfModel& vec,
                                    Labels& y) {
  std::vector<SparseVector> x;
  y.clear();
  for (const auto& r : corpus.records) {
    x.push_back(vec.transform_text(r.rationale));
    y.push_back(r.is_correct ? 1 : 0);
  }
  return x;
}

}  // namespace

TEST_CASE("forest vote fractions are normalized and quantized") {
  const Corpus corpus = testsupport::hedge_corpus(300, 31);
  std::vector<std::string> texts;
  for (const auto& r : corpus.records) texts.push_back(r.rationale);
  const auto vec = TfidfModel::fit_texts(texts, {}, 200);
  Labels y;
  const auto x = featurize(corpus, vec, y);

  TrainConfig cfg;
  cfg.algorithm = Algorithm::random_forest;
  cfg.rf_trees = 25;
  cfg.seed = 3;
  const auto model = train(x, y, cfg, compute_class_weights(y));
  for (const auto& s : predict_scores(model, x)) {
    CHECK_THAT(s[0] + s[1], WithinAbs(1.0, 1e-12));
    // Vote fractions over 25 trees are multiples of 1/25.
    const double scaled = s[1] * 25.0;
    CHECK_THAT(scaled, WithinAbs(std::round(scaled), 1e-9));
  }
}

TEST_CASE("forest learns the hedge signal well above chance") {
  const Corpus train_c = testsupport::hedge_corpus(600, 17);
  const Corpus test_c = testsupport::hedge_corpus(300, 991);
  std::vector<std::string> texts;
  for (const auto& r : train_c.records) texts.push_back(r.rationale);
  const auto vec = TfidfModel::fit_texts(texts, {}, 400);
  Labels y_train, y_test;
  const auto x_train = featurize(train_c, vec, y_train);
  const auto x_test = featurize(test_c, vec, y_test);

  TrainConfig cfg;
  cfg.algorithm = Algorithm::random_forest;
  cfg.rf_trees = 60;
  cfg.seed = 5;
  const auto model = train(x_train, y_train, cfg, compute_class_weights(y_train));
  const auto pred = predict(model, x_test);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    hits += pred[i] == y_test[i] ? 1 : 0;
  const double accuracy = static_cast<double>(hits) / static_cast<double>(pred.size());
  CHECK(accuracy > 0.85);

  // The hedge tokens carry the impurity mass.
  const auto tf = top_features(model, vec, 4);
  bool hedge_on_top = false;
  for (const auto& [tok, v] : tf.positive)
    hedge_on_top = hedge_on_top || tok == "might" || tok == "could" ||
                   tok == "possibly" || tok == "perhaps";
  CHECK(hedge_on_top);
  // Importances sum to one.
  const auto& fm = std::get<ForestModel>(model.params);
  double total = 0.0;
  for (double v : fm.importances) total += v;
  CHECK_THAT(total, WithinAbs(1.0, 1e-9));
}

TEST_CASE("boosting drives training loss down and overfits the toy set") {
  const auto x = [] {
    std::vector<SparseVector> rows;
    for (int i = 0; i < 16; ++i) {
      SparseVector v;
      v.dimension = 2;
      v.entries = {{0u, 0.2 + 0.1 * i}, {1u, 0.2 + 0.1 * ((i * 7) % 16)}};
      std::sort(v.entries.begin(), v.entries.end());
      rows.push_back(v);
    }
    return rows;
  }();
  Labels y;
  for (const auto& row : x) y.push_back(row.at(0) > row.at(1) ? 1 : 0);

  TrainConfig cfg;
  cfg.algorithm = Algorithm::gradient_boosting;
  cfg.gbm_stages = 40;
  const auto model = train(x, y, cfg, ClassWeights::uniform());
  CHECK(predict(model, x) == y);

  // Stagewise margins: more stages should not hurt the training fit.
  const auto& bm = std::get<BoostModel>(model.params);
  CHECK(bm.trees.size() == 40);
  for (const auto& t : bm.trees) {
    // Depth limit 3 means at most 2^3 leaves -> at most 15 nodes.
    CHECK(t.nodes.size() <= 15);
  }
}

TEST_CASE("boosting base score is the weighted log odds") {
  std::vector<SparseVector> x;
  for (int i = 0; i < 8; ++i) {
    SparseVector v;
    v.dimension = 1;
    v.entries = {{0u, 1.0 + i}};
    x.push_back(v);
  }
  Labels y = {1, 1, 1, 1, 1, 1, 0, 0};  // 6 positive, 2 negative
  TrainConfig cfg;
  cfg.algorithm = Algorithm::gradient_boosting;
  cfg.gbm_stages = 1;
  const auto model = train(x, y, cfg, ClassWeights::uniform());
  const auto& bm = std::get<BoostModel>(model.params);
  CHECK_THAT(bm.base_score, WithinAbs(std::log(6.0 / 2.0), 1e-12));

  // With balanced weights the effective prior evens out.
  const auto balanced = train(x, y, cfg, compute_class_weights(y));
  CHECK_THAT(std::get<BoostModel>(balanced.params).base_score,
             WithinAbs(0.0, 1e-12));
}

TEST_CASE("forests cope with class imbalance through weighting") {
  // 9:1 imbalance; balanced weights should keep minority recall usable.
  Corpus corpus;
  KeyedRng rng(77, "imbalanced");
  const std::vector<std::string> filler = {"teacher", "asks", "student", "board",
                                           "answer", "lesson", "group"};
  for (int i = 0; i < 500; ++i) {
    const bool correct = i % 10 != 0;  // 90% correct
    std::string text;
    for (int w = 0; w < 9; ++w) {
      if (w) text += ' ';
      text += filler[rng.uniform_below(filler.size())];
    }
    if (!correct) text += " might could";
    corpus.records.push_back(testsupport::make_record(
        "r" + std::to_string(i), "None", text, correct));
  }
  std::vector<std::string> texts;
  for (const auto& r : corpus.records) texts.push_back(r.rationale);
  const auto vec = TfidfModel::fit_texts(texts, {}, 200);
  Labels y;
  const auto x = featurize(corpus, vec, y);
  TrainConfig cfg;
  cfg.algorithm = Algorithm::random_forest;
  cfg.rf_trees = 40;
  cfg.seed = 9;
  const auto model = train(x, y, cfg, compute_class_weights(y));
  const auto pred = predict(model, x);
  std::size_t minority_hits = 0, minority_total = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) {
      ++minority_total;
      minority_hits += pred[i] == 0 ? 1 : 0;
    }
  }
  CHECK(static_cast<double>(minority_hits) / static_cast<double>(minority_total) >
        0.9);
}

TEST_CASE("tree ensembles serialize losslessly") {
  const Corpus corpus = testsupport::hedge_corpus(150, 55);
  std::vector<std::string> texts;
  for (const auto& r : corpus.records) texts.push_back(r.rationale);
  const auto vec = TfidfModel::fit_texts(texts, {}, 150);
  Labels y;
  const auto x = featurize(corpus, vec, y);

  for (const Algorithm algo :
       {Algorithm::random_forest, Algorithm::gradient_boosting}) {
    TrainConfig cfg;
    cfg.algorithm = algo;
    cfg.rf_trees = 10;
    cfg.gbm_stages = 10;
    cfg.seed = 4;
    const auto model = train(x, y, cfg, compute_class_weights(y));
    const auto reloaded = model_from_json(model_to_json(model));
    const auto s1 = predict_scores(model, x);
    const auto s2 = predict_scores(reloaded, x);
    INFO(algorithm_name(algo));
    for (std::size_t i = 0; i < s1.size(); ++i) {
      CHECK(s1[i][0] == s2[i][0]);
      CHECK(s1[i][1] == s2[i][1]);
    }
  }
}
