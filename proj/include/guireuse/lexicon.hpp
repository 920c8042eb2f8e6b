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

#ifndef GUIREUSE_LEXICON_HPP
#define GUIREUSE_LEXICON_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace guireuse {

using TokenList = std::vector<std::string>;

/// Short form -> expansion words, e.g. "et" -> {"edit", "text"}.
struct AbbreviationMap {
    std::map<std::string, std::vector<std::string>> expansions;

    /// et, btn, fab, tv, img, txt.
    static AbbreviationMap defaults();

    /// Throws ConfigError on upper-case keys or empty expansions.
    void validate() const;
};

struct TokenizerOptions {
    AbbreviationMap abbreviations = AbbreviationMap::defaults();
    /// Words that identifiers split across a camel boundary ("ToDo" -> "todo").
    std::set<std::string> compounds = {"todo"};
    std::set<std::string> stopwords;
    bool collapse_duplicates = false;
};

/// Splits on non-alphanumerics and camelCase boundaries, lowercases, drops numeric
/// fragments, and expands abbreviations.
TokenList tokenize(std::string_view raw, const TokenizerOptions &options);
TokenList tokenize(std::string_view raw, const AbbreviationMap &abbreviations);
TokenList tokenize(std::string_view raw);

/// Word vectors in word2vec text format.
class EmbeddingTable {
public:
    /// Throws ParseError on malformed input, mismatched dimensions, or zero vectors.
    static EmbeddingTable parse(std::string_view text);
    static EmbeddingTable load(const std::filesystem::path &path);

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return words_.size(); }
    bool contains(std::string_view word) const;
    const std::vector<std::string> &words() const { return words_; }
    /// Empty when out of vocabulary.
    std::vector<double> vector(std::string_view word) const;

    /// Cosine of the two vectors. 1.0 for identical words; 0.0 when a word is unknown.
    double word_similarity(std::string_view a, std::string_view b) const;

private:
    std::size_t dimension_ = 0;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> data_;
    std::vector<double> norms_;
};

double word_similarity(std::string_view a, std::string_view b, const EmbeddingTable &table);

/// Mean over a of the best match in b. 0.0 when either list is empty.
double attribute_similarity(const TokenList &a, const TokenList &b, const EmbeddingTable &table);

}  // namespace guireuse

#endif  // GUIREUSE_LEXICON_HPP
