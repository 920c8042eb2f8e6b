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

#include "guireuse/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "guireuse/app_model.hpp"
#include "guireuse/errors.hpp"

namespace guireuse {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_upper(c) || is_lower(c) || is_digit(c); }

std::string lower(std::string_view s)
{
    std::string out(s);
    for (char &c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

// Splits one alphanumeric chunk: "userToDoEditText" -> user To Do Edit Text,
// "HTMLView" -> HTML View.
std::vector<std::string_view> camel_fragments(std::string_view chunk)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < chunk.size()) {
        std::size_t j = i;
        if (is_upper(chunk[i])) {
            while (j < chunk.size() && is_upper(chunk[j])) {
                ++j;
            }
            const bool lower_follows = j < chunk.size() && is_lower(chunk[j]);
            if (!lower_follows) {
                out.push_back(chunk.substr(i, j - i));
                i = j;
                continue;
            }
            if (j - i > 1) {
                out.push_back(chunk.substr(i, j - 1 - i));
                i = j - 1;
            }
            j = i + 1;
        }
        while (j < chunk.size() && (is_lower(chunk[j]) || is_digit(chunk[j]))) {
            ++j;
        }
        out.push_back(chunk.substr(i, j - i));
        i = j;
    }
    return out;
}

bool all_digits(std::string_view s)
{
    return std::all_of(s.begin(), s.end(), is_digit);
}

}  // namespace

AbbreviationMap AbbreviationMap::defaults()
{
    AbbreviationMap m;
    m.expansions = {
        {"et", {"edit", "text"}},
        {"btn", {"button"}},
        {"fab", {"floating", "action", "button"}},
        {"tv", {"text", "view"}},
        {"img", {"image"}},
        {"txt", {"text"}},
    };
    return m;
}

void AbbreviationMap::validate() const
{
    for (const auto &[key, words] : expansions) {
        if (key.empty() || lower(key) != key) {
            throw ConfigError("abbreviation key '" + key + "' must be non-empty lowercase");
        }
        if (words.empty()) {
            throw ConfigError("abbreviation '" + key + "' has no expansion");
        }
        for (const auto &w : words) {
            if (w.empty() || lower(w) != w || !std::all_of(w.begin(), w.end(), is_alnum)) {
                throw ConfigError("abbreviation '" + key + "' expands to invalid word '" + w + "'");
            }
        }
    }
}

TokenList tokenize(std::string_view raw, const TokenizerOptions &options)
{
    TokenList out;
    auto emit = [&](const std::string &word) {
        if (options.stopwords.count(word) != 0) {
            return;
        }
        if (options.collapse_duplicates && std::find(out.begin(), out.end(), word) != out.end()) {
            return;
        }
        out.push_back(word);
    };

    std::size_t i = 0;
    while (i < raw.size()) {
        if (!is_alnum(raw[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < raw.size() && is_alnum(raw[j])) {
            ++j;
        }
        const auto frags = camel_fragments(raw.substr(i, j - i));
        i = j;

        for (std::size_t f = 0; f < frags.size(); ++f) {
            std::string word = lower(frags[f]);
            if (f + 1 < frags.size() && options.compounds.count(word + lower(frags[f + 1])) != 0) {
                word += lower(frags[f + 1]);
                ++f;
            }
            if (word.empty() || all_digits(word)) {
                continue;
            }
            auto it = options.abbreviations.expansions.find(word);
            if (it == options.abbreviations.expansions.end()) {
                emit(word);
            } else {
                for (const auto &w : it->second) {
                    emit(w);
                }
            }
        }
    }
    return out;
}

TokenList tokenize(std::string_view raw, const AbbreviationMap &abbreviations)
{
    TokenizerOptions options;
    options.abbreviations = abbreviations;
    return tokenize(raw, options);
}

TokenList tokenize(std::string_view raw)
{
    static const TokenizerOptions defaults;
    return tokenize(raw, defaults);
}

EmbeddingTable EmbeddingTable::parse(std::string_view text)
{
    EmbeddingTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::size_t declared = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::istringstream ls(line);
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (!header) {
            long long vocab = -1;
            long long dim = -1;
            std::string extra;
            if (!(ls >> vocab >> dim) || (ls >> extra) || vocab < 0 || dim <= 0) {
                throw ParseError(where + "expected header \"vocab_size dimension\"");
            }
            declared = static_cast<std::size_t>(vocab);
            t.dimension_ = static_cast<std::size_t>(dim);
            header = true;
            continue;
        }
        std::string word;
        ls >> word;
        std::vector<double> v;
        std::string tok;
        while (ls >> tok) {
            char *end = nullptr;
            const double x = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0' || !std::isfinite(x)) {
                throw ParseError(where + "bad number '" + tok + "'");
            }
            v.push_back(x);
        }
        if (v.size() != t.dimension_) {
            throw ParseError(where + "word '" + word + "' has " + std::to_string(v.size()) +
                             " components, expected " + std::to_string(t.dimension_));
        }
        double sq = 0.0;
        for (double x : v) {
            sq += x * x;
        }
        if (sq == 0.0) {
            throw ParseError(where + "zero vector for '" + word + "'");
        }
        if (!t.index_.emplace(word, t.words_.size()).second) {
            throw ParseError(where + "duplicate word '" + word + "'");
        }
        t.words_.push_back(word);
        t.data_.insert(t.data_.end(), v.begin(), v.end());
        t.norms_.push_back(std::sqrt(sq));
    }
    if (!header) {
        throw ParseError("empty embedding file");
    }
    if (t.words_.size() != declared) {
        throw ParseError("header declares " + std::to_string(declared) + " words, found " +
                         std::to_string(t.words_.size()));
    }
    return t;
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path &path)
{
    return parse(read_text_file(path));
}

bool EmbeddingTable::contains(std::string_view word) const
{
    return index_.find(std::string(word)) != index_.end();
}

std::vector<double> EmbeddingTable::vector(std::string_view word) const
{
    auto it = index_.find(std::string(word));
    if (it == index_.end()) {
        return {};
    }
    const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(it->second * dimension_);
    return {begin, begin + static_cast<std::ptrdiff_t>(dimension_)};
}

double EmbeddingTable::word_similarity(std::string_view a, std::string_view b) const
{
    if (a == b) {
        return 1.0;
    }
    auto ia = index_.find(std::string(a));
    auto ib = index_.find(std::string(b));
    if (ia == index_.end() || ib == index_.end()) {
        return 0.0;
    }
    const double *x = data_.data() + ia->second * dimension_;
    const double *y = data_.data() + ib->second * dimension_;
    double dot = 0.0;
    for (std::size_t d = 0; d < dimension_; ++d) {
        dot += x[d] * y[d];
    }
    return dot / (norms_[ia->second] * norms_[ib->second]);
}

double word_similarity(std::string_view a, std::string_view b, const EmbeddingTable &table)
{
    return table.word_similarity(a, b);
}

double attribute_similarity(const TokenList &a, const TokenList &b, const EmbeddingTable &table)
{
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto &w : a) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto &w2 : b) {
            best = std::max(best, table.word_similarity(w, w2));
        }
        total += best;
    }
    return total / static_cast<double>(a.size());
}

}  // namespace guireuse
