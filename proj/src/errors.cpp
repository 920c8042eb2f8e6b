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

#include "guireuse/errors.hpp"

namespace guireuse {

namespace {

std::string join_violations(const std::vector<Violation> &violations)
{
    std::string out = "validation failed";
    for (const auto &v : violations) {
        out += "\n  " + v.path + ": " + v.message;
    }
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations))
{
}

UnknownWidgetError::UnknownWidgetError(const std::string &screen_id, const std::string &widget_id)
    : std::runtime_error("widget '" + widget_id + "' is not on screen '" + screen_id + "'"),
      screen_id_(screen_id),
      widget_id_(widget_id)
{
}

ExecutionError::ExecutionError(std::size_t index, const std::string &what)
    : std::runtime_error("event " + std::to_string(index) + ": " + what), index_(index)
{
}

}  // namespace guireuse
