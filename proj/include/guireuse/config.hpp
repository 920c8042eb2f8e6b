/*
 * Copyright (c) 2026 The guireuse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GUIREUSE_CONFIG_HPP
#define GUIREUSE_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "guireuse/reuse_engine.hpp"

namespace guireuse {

/// Everything a reuse run can be tuned with. Loaded from TOML:
///
///   [matcher]     k, threshold, normalized, [matcher.weights] <attribute> = w
///   [lexicon]     abbreviations = { et = ["edit", "text"] }, compounds, stopwords,
///                 collapse_duplicates
///   [explorer]    max_len, cache
///   [adaptation]  enabled, weakest_fraction, retry_budget
///   [deduplication] enabled
///   [oracle]      accept_threshold
///   [run]         embeddings, deterministic
///
/// Unknown tables or keys are errors.
struct RunConfig {
    ReuseConfig reuse;
    std::optional<std::filesystem::path> embeddings;
    bool deterministic = true;
};

/// Throws ConfigError (bad values, unknown keys) or ParseError (malformed TOML).
/// Relative paths resolve against base_dir.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path &base_dir = {});
RunConfig load_run_config(const std::filesystem::path &path);

}  // namespace guireuse

#endif  // GUIREUSE_CONFIG_HPP
