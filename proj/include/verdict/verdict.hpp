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

#include "verdict/boosting.hpp"
#include "verdict/class_weights.hpp"
#include "verdict/classifier.hpp"
#include "verdict/construct.hpp"
#include "verdict/corpus.hpp"
#include "verdict/csv.hpp"
#include "verdict/digest.hpp"
#include "verdict/error.hpp"
#include "verdict/eval.hpp"
#include "verdict/forest.hpp"
#include "verdict/lexicon.hpp"
#include "verdict/linear.hpp"
#include "verdict/linguistics.hpp"
#include "verdict/naive_bayes.hpp"
#include "verdict/pipeline.hpp"
#include "verdict/rng.hpp"
#include "verdict/router.hpp"
#include "verdict/sparse.hpp"
#include "verdict/stats.hpp"
#include "verdict/tfidf.hpp"
#include "verdict/tokenize.hpp"
#include "verdict/tree.hpp"
#include "verdict/version.hpp"
