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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "verdict/verdict.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 ok, 2 I/O or parse, 3 data contract, 4 artifact integrity.
int exit_code_for(verdict::Errc c) {
  using verdict::Errc;
  switch (c) {
    case Errc::file_not_found:
    case Errc::malformed_row:
    case Errc::unknown_label:
    case Errc::malformed_lexicon:
    case Errc::duplicate_category:
    case Errc::unknown_slice:
      return 2;
    case Errc::artifact_integrity:
      return 4;
    default:
      return 3;
  }
}

struct CommonIo {
  std::string input;
  std::string format = "jsonl";
  std::string output_dir;

  verdict::CorpusFormat corpus_format() const {
    if (format == "jsonl") return verdict::CorpusFormat::jsonl;
    if (format == "csv") return verdict::CorpusFormat::csv;
    throw verdict::Error(verdict::Errc::malformed_row,
                         "unknown corpus format \"" + format + "\"");
  }

  fs::path resolve_output_dir() const {
    std::string dir = output_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("VERDICT_OUTPUT_DIR")) dir = env;
      else dir = "verdict_out";
    }
    fs::create_directories(dir);
    return dir;
  }
};

void add_io_flags(CLI::App* cmd, CommonIo& io) {
  cmd->add_option("--input", io.input, "corpus file")->required();
  cmd->add_option("--format", io.format, "corpus format: jsonl|csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  cmd->add_option("--output-dir", io.output_dir,
                  "output directory (default: $VERDICT_OUTPUT_DIR or ./verdict_out)");
}

verdict::StopwordSet resolve_stopwords(const std::string& path) {
  if (path.empty()) return verdict::default_stopwords();
  return verdict::load_stopwords(path);
}

verdict::Lexicon resolve_lexicon(const std::string& path) {
  if (path.empty()) return verdict::default_lexicon();
  return verdict::load_lexicon(path);
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw verdict::Error(verdict::Errc::file_not_found,
                         "cannot write " + path.string());
  out << body;
}

// ---- split ---------------------------------------------------------------

struct SplitArgs {
  CommonIo io;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  std::string summary_path;
};

int cmd_split(const SplitArgs& a) {
  const auto [corpus, summary] =
      verdict::load_corpus(a.io.input, a.io.corpus_format());
  const auto [train, test] =
      verdict::stratified_split(corpus, a.test_fraction, a.seed);
  const fs::path dir = a.io.resolve_output_dir();

  {
    std::ofstream out(dir / "train.jsonl", std::ios::binary);
    verdict::write_jsonl(train, out);
  }
  {
    std::ofstream out(dir / "test.jsonl", std::ios::binary);
    verdict::write_jsonl(test, out);
  }

  json j = summary.to_json();
  const auto [train_neg, train_pos] = train.class_counts();
  const auto [test_neg, test_pos] = test.class_counts();
  j["split"] = {{"test_fraction", a.test_fraction},
                {"seed", a.seed},
                {"train", {{"n", train.size()},
                           {"correct", train_pos},
                           {"incorrect", train_neg}}},
                {"test", {{"n", test.size()},
                          {"correct", test_pos},
                          {"incorrect", test_neg}}}};
  verdict::save_json_file(j, (dir / "split_summary.json").string());
  if (!a.summary_path.empty()) verdict::save_json_file(j, a.summary_path);
  else std::cout << j.dump() << "\n";

  json echo = {{"command", "split"},
               {"input", a.io.input},
               {"format", a.io.format},
               {"test_fraction", a.test_fraction},
               {"seed", a.seed}};
  verdict::save_json_file(echo, (dir / "split_config.json").string());
  return 0;
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  CommonIo io;
  std::string algorithm = "random-forest";
  bool all = false;
  std::size_t specialists = 0;
  std::uint64_t seed = 0;
  std::uint32_t max_features = verdict::kDefaultMaxFeatures;
  std::string stopwords_path;
  // hyperparameters (defaults in TrainConfig)
  std::size_t trees = 100;
  std::size_t stages = 100;
  double learning_rate = 0.1;
  std::size_t gbm_depth = 3;
  std::size_t epochs = 10;
  double l2 = 1.0;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  double alpha = 1.0;
};

verdict::TrainConfig make_train_config(const TrainArgs& a, verdict::Algorithm algo) {
  verdict::TrainConfig cfg;
  cfg.algorithm = algo;
  cfg.seed = a.seed;
  cfg.rf_trees = a.trees;
  cfg.gbm_stages = a.stages;
  cfg.gbm_learning_rate = a.learning_rate;
  cfg.gbm_max_depth = a.gbm_depth;
  cfg.svm_epochs = a.epochs;
  cfg.svm_l2 = a.l2;
  cfg.lr_l2 = a.l2;
  cfg.lr_tol = a.tol;
  cfg.lr_max_iter = a.max_iter;
  cfg.nb_alpha = a.alpha;
  return cfg;
}

int cmd_train(const TrainArgs& a) {
  const auto [corpus, summary] =
      verdict::load_corpus(a.io.input, a.io.corpus_format());
  if (corpus.empty())
    throw verdict::Error(verdict::Errc::empty_corpus, a.io.input);
  const auto stopwords = resolve_stopwords(a.stopwords_path);
  const fs::path dir = a.io.resolve_output_dir();

  std::vector<verdict::Algorithm> algos;
  if (a.all) {
    algos.assign(verdict::kAllAlgorithms.begin(), verdict::kAllAlgorithms.end());
  } else {
    const auto algo = verdict::parse_algorithm(a.algorithm);
    if (!algo)
      throw verdict::Error(verdict::Errc::invalid_config,
                           "unknown algorithm \"" + a.algorithm + "\"");
    algos.push_back(*algo);
  }

  json manifest;
  manifest["artifacts"] = json::array();

  for (const auto algo : algos) {
    const verdict::TrainConfig cfg = make_train_config(a, algo);
    const auto vm = verdict::fit_verifier(corpus, cfg, stopwords, a.max_features);
    if (!vm.model.converged)
      std::cerr << "warning: " << verdict::algorithm_name(algo)
                << " did not reach its convergence tolerance (model kept)\n";
    const std::string filename =
        std::string("model_") + verdict::algorithm_name(algo) + ".json";
    verdict::save_verifier(vm, (dir / filename).string());
    manifest["artifacts"].push_back(
        {{"algorithm", verdict::algorithm_name(algo)},
         {"file", filename},
         {"vectorizer_digest", vm.vectorizer.digest()},
         {"converged", vm.model.converged}});
    std::cerr << "trained " << verdict::algorithm_name(algo) << " on "
              << corpus.size() << " records -> " << filename << "\n";
  }

  if (a.specialists > 0) {
    const auto algo = a.all ? verdict::Algorithm::random_forest
                            : *verdict::parse_algorithm(a.algorithm);
    const verdict::TrainConfig cfg = make_train_config(a, algo);
    const auto ens = verdict::fit_specialists(corpus, a.specialists, cfg,
                                              stopwords, a.max_features);
    for (const auto& w : ens.warnings) std::cerr << "warning: " << w << "\n";
    const std::string ens_dir = (dir / "ensemble").string();
    verdict::save_ensemble(ens, ens_dir);
    manifest["ensemble"] = {{"directory", "ensemble"},
                            {"k", a.specialists},
                            {"specialists", ens.specialists.size()},
                            {"warnings", ens.warnings}};
    std::cerr << "trained ensemble with " << ens.specialists.size()
              << " specialists -> ensemble/\n";
  }

  verdict::save_json_file(manifest, (dir / "train_manifest.json").string());

  json echo = {{"command", "train"},
               {"input", a.io.input},
               {"format", a.io.format},
               {"all", a.all},
               {"specialists", a.specialists},
               {"max_features", a.max_features},
               {"stopwords", a.stopwords_path.empty() ? "<builtin>" : a.stopwords_path}};
  echo["algorithms"] = json::array();
  for (const auto algo : algos)
    echo["algorithms"].push_back(
        make_train_config(a, algo).to_json());
  verdict::save_json_file(echo, (dir / "train_config.json").string());
  return 0;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  CommonIo io;
  std::vector<std::string> model_paths;
  std::string ensemble_dir;
  std::vector<std::string> slices;
  std::size_t n_boot = 1000;
  std::uint64_t seed = 0;
};

int cmd_eval(const EvalArgs& a) {
  const auto [test, summary] =
      verdict::load_corpus(a.io.input, a.io.corpus_format());
  if (test.empty()) throw verdict::Error(verdict::Errc::empty_corpus, a.io.input);
  if (a.model_paths.empty() && a.ensemble_dir.empty())
    throw verdict::Error(verdict::Errc::invalid_config,
                         "provide --model and/or --ensemble");

  std::set<verdict::SliceKind> slices;
  for (const auto& s : a.slices) {
    const auto kind = verdict::parse_slice(s);
    if (!kind)
      throw verdict::Error(verdict::Errc::unknown_slice, s);
    slices.insert(*kind);
  }

  const fs::path dir = a.io.resolve_output_dir();
  json report;
  report["n_test"] = test.size();
  report["models"] = json::array();
  std::vector<verdict::BenchmarkRow> table;
  std::ostringstream csv_out;
  csv_out << verdict::report_csv_header() << "\n";

  auto collect = [&](const verdict::SlicedEvaluation& ev) {
    csv_out << verdict::report_csv_row(ev.global) << "\n";
    for (const auto& [dim, reports] : ev.slices)
      for (const auto& r : reports) csv_out << verdict::report_csv_row(r) << "\n";
  };

  for (const auto& path : a.model_paths) {
    const auto vm = verdict::load_verifier(path);
    const auto ev = verdict::evaluate_sliced(test, vm, slices, a.n_boot, a.seed);
    json entry;
    entry["artifact"] = fs::path(path).filename().string();
    entry["algorithm"] = verdict::algorithm_name(vm.model.algorithm);
    entry["evaluation"] = ev.to_json();
    report["models"].push_back(std::move(entry));
    table.push_back({verdict::algorithm_display_name(vm.model.algorithm),
                     ev.global, ""});
    collect(ev);
  }

  if (!a.ensemble_dir.empty()) {
    const auto ens = verdict::load_ensemble(a.ensemble_dir);
    const auto ev = verdict::evaluate_sliced(test, ens, slices, a.n_boot, a.seed);
    json entry;
    entry["artifact"] = "ensemble";
    entry["algorithm"] =
        verdict::algorithm_name(ens.generalist.model.algorithm);
    entry["specialists"] = ens.specialists.size();
    entry["evaluation"] = ev.to_json();
    report["ensemble"] = std::move(entry);
    table.push_back({"Specialist Ensemble", ev.global, ""});
    collect(ev);
  }

  verdict::save_json_file(report, (dir / "report.json").string());
  write_text(dir / "report.csv", csv_out.str());
  write_text(dir / "report.md", verdict::markdown_benchmark_table(table));

  json echo = {{"command", "eval"},
               {"input", a.io.input},
               {"format", a.io.format},
               {"models", a.model_paths},
               {"ensemble", a.ensemble_dir},
               {"slices", a.slices},
               {"n_boot", a.n_boot},
               {"seed", a.seed}};
  verdict::save_json_file(echo, (dir / "eval_config.json").string());
  return 0;
}

// ---- linguistics -----------------------------------------------------------

struct LinguisticsArgs {
  CommonIo io;
  std::string lexicon_path;
  std::size_t n_boot = 1000;
  std::uint64_t seed = 0;
};

int cmd_linguistics(const LinguisticsArgs& a) {
  const auto [corpus, summary] =
      verdict::load_corpus(a.io.input, a.io.corpus_format());
  if (corpus.empty()) throw verdict::Error(verdict::Errc::empty_corpus, a.io.input);
  const verdict::Lexicon lexicon = resolve_lexicon(a.lexicon_path);
  const fs::path dir = a.io.resolve_output_dir();

  // Per-record density profiles.
  {
    std::ostringstream os;
    os << "record_id,is_correct,construct,word_count,zero_words";
    for (const auto& cat : lexicon.category_names()) os << ',' << verdict::csv::quote(cat);
    os << "\n";
    for (const auto& r : corpus.records) {
      const auto prof = verdict::density(r.rationale, lexicon, r.record_id);
      os << verdict::csv::quote(r.record_id) << ',' << (r.is_correct ? 1 : 0)
         << ',' << verdict::csv::quote(r.predicted_construct.str()) << ','
         << prof.word_count << ',' << (prof.zero_words ? 1 : 0);
      for (const auto& cat : lexicon.category_names())
        os << ',' << prof.density.at(cat);
      os << "\n";
    }
    write_text(dir / "densities.csv", os.str());
  }

  // Group comparisons with Holm adjustment across categories.
  {
    std::vector<verdict::GroupComparison> comparisons;
    for (const auto& cat : lexicon.category_names())
      comparisons.push_back(
          verdict::compare_groups(corpus, lexicon, cat, a.n_boot, a.seed));
    std::vector<double> pvals;
    for (const auto& c : comparisons) pvals.push_back(c.p_value);
    const auto holm = verdict::stats::holm_adjust(pvals);
    json arr = json::array();
    for (std::size_t i = 0; i < comparisons.size(); ++i) {
      json row = comparisons[i].to_json();
      row["p_holm"] = holm[i];
      arr.push_back(std::move(row));
    }
    verdict::save_json_file(json{{"comparisons", arr}},
                            (dir / "group_comparisons.json").string());
  }

  // Length distributions + rank-sum tests.
  const auto lengths = verdict::length_stats(corpus, /*group_by_construct=*/true);
  verdict::save_json_file(lengths.to_json(), (dir / "length_stats.json").string());

  // Plot-ready CSVs: five-number summaries.
  {
    std::ostringstream os;
    os << "construct,group,n,mean,min,q1,median,q3,max\n";
    for (const auto& g : lengths.groups) {
      os << verdict::csv::quote(g.construct.empty() ? "ALL" : g.construct) << ','
         << (g.is_correct ? "correct" : "incorrect") << ',' << g.n << ','
         << g.mean << ',' << g.summary.min << ',' << g.summary.q1 << ','
         << g.summary.median << ',' << g.summary.q3 << ',' << g.summary.max
         << "\n";
    }
    write_text(dir / "plot_length_summary.csv", os.str());
  }
  {
    std::map<std::pair<std::string, bool>, std::vector<double>> per_group;
    for (const auto& r : corpus.records) {
      const auto prof = verdict::density(r.rationale, lexicon, r.record_id);
      for (const auto& cat : lexicon.category_names())
        per_group[{cat, r.is_correct}].push_back(prof.density.at(cat));
    }
    std::ostringstream os;
    os << "category,group,n,mean,min,q1,median,q3,max\n";
    for (const auto& [key, values] : per_group) {
      const auto five = verdict::stats::five_number_summary(values);
      os << verdict::csv::quote(key.first) << ','
         << (key.second ? "correct" : "incorrect") << ',' << values.size() << ','
         << verdict::stats::mean(values) << ',' << five.min << ',' << five.q1
         << ',' << five.median << ',' << five.q3 << ',' << five.max << "\n";
    }
    write_text(dir / "plot_density_summary.csv", os.str());
  }

  json echo = {{"command", "linguistics"},
               {"input", a.io.input},
               {"format", a.io.format},
               {"lexicon", a.lexicon_path.empty() ? "<builtin>" : a.lexicon_path},
               {"n_boot", a.n_boot},
               {"seed", a.seed}};
  verdict::save_json_file(echo, (dir / "linguistics_config.json").string());
  return 0;
}

// ---- triage ----------------------------------------------------------------

struct TriageArgs {
  std::string input;
  std::string model_path;
  std::string ensemble_dir;
  std::string output_path;
  double tau = 0.5;
};

int cmd_triage(const TriageArgs& a) {
  if (a.model_path.empty() == a.ensemble_dir.empty())
    throw verdict::Error(verdict::Errc::invalid_config,
                         "provide exactly one of --model or --ensemble");

  std::optional<verdict::VerifierModel> vm;
  std::optional<verdict::SpecialistEnsemble> ens;
  if (!a.model_path.empty()) vm = verdict::load_verifier(a.model_path);
  else ens = verdict::load_ensemble(a.ensemble_dir);

  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw verdict::Error(verdict::Errc::file_not_found, a.input);
  std::ofstream file_out;
  if (!a.output_path.empty()) {
    file_out.open(a.output_path, std::ios::binary);
    if (!file_out)
      throw verdict::Error(verdict::Errc::file_not_found,
                           "cannot write " + a.output_path);
  }
  std::ostream& out = a.output_path.empty() ? std::cout : file_out;

  verdict::LoadOptions opt;
  opt.require_is_correct = false;

  // Line-by-line streaming: output order equals input order, memory stays
  // bounded by one record.
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (verdict::detail::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw verdict::Error(verdict::Errc::malformed_row,
                           "line " + std::to_string(lineno) + ": " + e.what());
    }
    const auto rec = verdict::record_from_json(j, opt, lineno);
    const verdict::ScoredPrediction sp =
        vm ? vm->score_record(rec) : ens->score_record(rec);
    const double score = sp.scores[1];
    json row;
    row["record_id"] = rec.record_id;
    row["score"] = score;
    // Ties flag for review, matching the classifier tie rule.
    row["decision"] = score > a.tau ? "accept" : "flag";
    row["served_by"] = sp.served_by();
    if (sp.zero_vector) row["zero_vector"] = true;
    out << row.dump() << "\n";
  }
  return 0;
}

// ---- benchmark ---------------------------------------------------------------

struct BenchmarkArgs {
  CommonIo io;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  std::size_t n_boot = 1000;
  std::uint32_t max_features = verdict::kDefaultMaxFeatures;
  std::string stopwords_path;
};

// Reference operating point for the compatibility check.
constexpr double kReferenceRandomForestF1 = 0.830;
constexpr double kCompatibilityTolerance = 0.05;

int cmd_benchmark(const BenchmarkArgs& a) {
  const auto [corpus, summary] =
      verdict::load_corpus(a.io.input, a.io.corpus_format());
  const auto [train, test] =
      verdict::stratified_split(corpus, a.test_fraction, a.seed);
  const auto stopwords = resolve_stopwords(a.stopwords_path);
  const fs::path dir = a.io.resolve_output_dir();

  std::vector<verdict::BenchmarkRow> table;
  json rows = json::array();
  bool rf_within = true;
  double rf_f1 = 0.0;

  for (const auto algo : verdict::kAllAlgorithms) {
    verdict::TrainConfig cfg;
    cfg.algorithm = algo;
    cfg.seed = a.seed;
    const auto model = verdict::fit_verifier(train, cfg, stopwords, a.max_features);
    const auto ev = verdict::evaluate_sliced(test, model, {}, a.n_boot, a.seed);
    std::string note;
    if (algo == verdict::Algorithm::random_forest) {
      rf_f1 = ev.global.positive.f1;
      rf_within =
          std::fabs(rf_f1 - kReferenceRandomForestF1) <= kCompatibilityTolerance;
      if (!rf_within) note = "F1 outside reference window 0.830 +/- 0.050";
    }
    table.push_back({verdict::algorithm_display_name(algo), ev.global, note});
    json row = ev.global.to_json();
    row["algorithm"] = verdict::algorithm_name(algo);
    rows.push_back(std::move(row));
    std::cerr << "benchmark: " << verdict::algorithm_name(algo) << " f1="
              << ev.global.positive.f1 << "\n";
  }

  json out;
  out["rows"] = std::move(rows);
  out["train_n"] = train.size();
  out["test_n"] = test.size();
  out["random_forest_compatibility"] = {
      {"reference_f1", kReferenceRandomForestF1},
      {"tolerance", kCompatibilityTolerance},
      {"observed_f1", rf_f1},
      {"within_window", rf_within}};
  verdict::save_json_file(out, (dir / "benchmark.json").string());
  write_text(dir / "benchmark.md", verdict::markdown_benchmark_table(table));

  json echo = {{"command", "benchmark"},
               {"input", a.io.input},
               {"format", a.io.format},
               {"test_fraction", a.test_fraction},
               {"seed", a.seed},
               {"n_boot", a.n_boot},
               {"max_features", a.max_features}};
  verdict::save_json_file(echo, (dir / "benchmark_config.json").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verdict: predicts whether an LLM-generated annotation label "
               "is correct from its rationale text"};
  app.require_subcommand(1);

  SplitArgs split_args;
  auto* split = app.add_subcommand("split", "stratified train/test split");
  add_io_flags(split, split_args.io);
  split->add_option("--test-fraction", split_args.test_fraction,
                    "test share in (0,1)");
  split->add_option("--seed", split_args.seed, "split seed");
  split->add_option("--summary", split_args.summary_path,
                    "write the ingest/split summary JSON here instead of stdout");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "train verification classifiers");
  add_io_flags(train, train_args.io);
  train->add_option("--algorithm", train_args.algorithm,
                    "logistic-regression|random-forest|linear-svm|"
                    "gradient-boosting|naive-bayes");
  train->add_flag("--all", train_args.all, "train all five algorithms");
  train->add_option("--specialists", train_args.specialists,
                    "also fit a specialist ensemble with top-K constructs");
  train->add_option("--seed", train_args.seed, "training seed");
  train->add_option("--max-features", train_args.max_features,
                    "vocabulary size cap");
  train->add_option("--stopwords", train_args.stopwords_path,
                    "stop-word list file (one word per line)");
  train->add_option("--trees", train_args.trees, "random-forest tree count");
  train->add_option("--stages", train_args.stages, "boosting stage count");
  train->add_option("--learning-rate", train_args.learning_rate,
                    "boosting learning rate");
  train->add_option("--gbm-depth", train_args.gbm_depth, "boosting tree depth");
  train->add_option("--epochs", train_args.epochs, "svm subgradient epochs");
  train->add_option("--l2", train_args.l2, "l2 strength (lr and svm)");
  train->add_option("--tol", train_args.tol, "lr convergence tolerance");
  train->add_option("--max-iter", train_args.max_iter, "lr iteration cap");
  train->add_option("--alpha", train_args.alpha, "naive-bayes smoothing");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate artifacts on a test corpus");
  add_io_flags(eval, eval_args.io);
  eval->add_option("--model", eval_args.model_paths, "model artifact (repeatable)");
  eval->add_option("--ensemble", eval_args.ensemble_dir, "ensemble directory");
  eval->add_option("--slice", eval_args.slices,
                   "report slice: algorithm|source_model|construct|served_by "
                   "(repeatable)");
  eval->add_option("--n-boot", eval_args.n_boot, "bootstrap replicates");
  eval->add_option("--seed", eval_args.seed, "bootstrap seed");

  LinguisticsArgs ling_args;
  auto* ling = app.add_subcommand(
      "linguistics", "lexicon densities, group comparisons, length stats");
  add_io_flags(ling, ling_args.io);
  ling->add_option("--lexicon", ling_args.lexicon_path,
                   "lexicon file ([Category] sections of comma-separated "
                   "patterns); default: builtin");
  ling->add_option("--n-boot", ling_args.n_boot, "bootstrap replicates");
  ling->add_option("--seed", ling_args.seed, "bootstrap seed");

  TriageArgs triage_args;
  auto* triage = app.add_subcommand(
      "triage", "stream accept/flag decisions for fresh annotations");
  triage->add_option("--input", triage_args.input, "annotation JSONL")->required();
  triage->add_option("--model", triage_args.model_path, "model artifact");
  triage->add_option("--ensemble", triage_args.ensemble_dir, "ensemble directory");
  triage->add_option("--tau", triage_args.tau,
                     "accept threshold; score <= tau flags for review");
  triage->add_option("--output", triage_args.output_path,
                     "decision JSONL path (default: stdout)");

  BenchmarkArgs bench_args;
  auto* bench = app.add_subcommand(
      "benchmark", "split + train all five + evaluate, with compatibility check");
  add_io_flags(bench, bench_args.io);
  bench->add_option("--test-fraction", bench_args.test_fraction, "test share");
  bench->add_option("--seed", bench_args.seed, "seed");
  bench->add_option("--n-boot", bench_args.n_boot, "bootstrap replicates");
  bench->add_option("--max-features", bench_args.max_features,
                    "vocabulary size cap");
  bench->add_option("--stopwords", bench_args.stopwords_path, "stop-word file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (split->parsed()) return cmd_split(split_args);
    if (train->parsed()) return cmd_train(train_args);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (ling->parsed()) return cmd_linguistics(ling_args);
    if (triage->parsed()) return cmd_triage(triage_args);
    if (bench->parsed()) return cmd_benchmark(bench_args);
  } catch (const verdict::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
