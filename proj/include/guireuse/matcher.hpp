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

#ifndef GUIREUSE_MATCHER_HPP
#define GUIREUSE_MATCHER_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "guireuse/app_model.hpp"
#include "guireuse/lexicon.hpp"

namespace guireuse {

/// Per-attribute weight; every attribute defaults to 1.0.
class AttributeWeights {
public:
    AttributeWeights();

    double get(std::string_view name) const;
    /// Throws ConfigError for unknown names or negative / non-finite weights.
    void set(std::string_view name, double weight);
    AttributeWeights scaled(double factor) const;
    /// Throws ConfigError when no weight is positive.
    void validate() const;

    const std::map<std::string, double, std::less<>> &values() const { return values_; }

    bool operator==(const AttributeWeights &) const = default;

private:
    std::map<std::string, double, std::less<>> values_;
};

struct MatcherOptions {
    AttributeWeights weights;
    std::size_t k = 5;
    double threshold = 0.4;
    /// Divide by the weight sum of the source's non-empty attributes instead of their count.
    bool normalized = false;
    TokenizerOptions tokenizer;
};

struct Candidate {
    Widget widget;
    std::string screen_id;
    std::string activity;
    double score = 0.0;
    std::size_t rank = 0;  // 1-based
};

double widget_similarity(const Widget &source, const Widget &target, const AttributeWeights &weights,
                         const EmbeddingTable &table, const TokenizerOptions &tokenizer = {},
                         bool normalized = false);

/// Scores widgets against a source widget with a fixed table and options.
class Matcher {
public:
    Matcher(std::shared_ptr<const EmbeddingTable> table, MatcherOptions options);

    const MatcherOptions &options() const { return options_; }
    const EmbeddingTable &table() const { return *table_; }

    double widget_similarity(const Widget &source, const Widget &target) const;

    /// Widgets on one screen scoring >= threshold, best first, ties in document order, at most k.
    std::vector<Candidate> rank_candidates(const Widget &source, const Screen &screen) const;
    std::vector<Candidate> rank_candidates(const Widget &source, const Screen &screen, std::size_t k,
                                           double threshold) const;

    /// Same ranking over every screen of an app. A widget id repeated on several screens of
    /// one activity counts once, at its best-scoring screen.
    std::vector<Candidate> rank_app_candidates(const Widget &source, const AppModel &app) const;

private:
    std::shared_ptr<const EmbeddingTable> table_;
    MatcherOptions options_;
};

}  // namespace guireuse

#endif  // GUIREUSE_MATCHER_HPP
