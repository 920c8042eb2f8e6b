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

#ifndef GUIREUSE_ERRORS_HPP
#define GUIREUSE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace guireuse {

/// Malformed input text (JSON, TOML, embedding file) that could not be parsed at all.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string &what) : std::runtime_error(what) {}
};

struct Violation {
    std::string path;     // location inside the document, e.g. "$.screens[1].widgets[0]"
    std::string message;
};

/// A document parsed but broke one or more invariants. Every violation names its path.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation> &violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// A concrete event referenced a widget that is not on the current screen.
class UnknownWidgetError : public std::runtime_error {
public:
    UnknownWidgetError(const std::string &screen_id, const std::string &widget_id);

    const std::string &screen_id() const { return screen_id_; }
    const std::string &widget_id() const { return widget_id_; }

private:
    std::string screen_id_;
    std::string widget_id_;
};

/// execute_test failure, carrying the index of the failing event.
class ExecutionError : public std::runtime_error {
public:
    ExecutionError(std::size_t index, const std::string &what);

    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace guireuse

#endif  // GUIREUSE_ERRORS_HPP
