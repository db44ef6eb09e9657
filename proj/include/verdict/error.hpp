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

#pragma once

#include <stdexcept>
#include <string>

namespace verdict {

enum class Errc {
  // I/O and parse failures (CLI exit code 2)
  file_not_found,
  malformed_row,
  unknown_label,
  malformed_lexicon,
  duplicate_category,
  unknown_slice,
  // data-contract violations (CLI exit code 3)
  invalid_fraction,
  empty_corpus,
  empty_training_set,
  empty_labels,
  dimension_mismatch,
  single_class_training,
  single_group,
  length_mismatch,
  too_few_samples,
  invalid_config,
  // artifact integrity (CLI exit code 4)
  artifact_integrity,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::file_not_found: return "FileNotFound";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::unknown_label: return "UnknownLabel";
    case Errc::malformed_lexicon: return "MalformedLexicon";
    case Errc::duplicate_category: return "DuplicateCategory";
    case Errc::unknown_slice: return "UnknownSlice";
    case Errc::invalid_fraction: return "InvalidFraction";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::empty_training_set: return "EmptyTrainingSet";
    case Errc::empty_labels: return "EmptyLabels";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::single_class_training: return "SingleClassTraining";
    case Errc::single_group: return "SingleGroup";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::artifact_integrity: return "ArtifactIntegrity";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace verdict
