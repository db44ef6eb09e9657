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

namespace verdict {

inline constexpr const char* kVersion = "0.1.0";

// Format tags embedded in every serialized artifact. Loaders reject
// artifacts whose tag does not match.
inline constexpr const char* kTfidfFormat = "verdict.tfidf.v1";
inline constexpr const char* kModelFormat = "verdict.model.v1";
inline constexpr const char* kEnsembleFormat = "verdict.ensemble.v1";

}  // namespace verdict
