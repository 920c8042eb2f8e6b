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

#ifndef GUIREUSE_TESTS_FIXTURES_HPP
#define GUIREUSE_TESTS_FIXTURES_HPP

#include <memory>
#include <string>

#include "guireuse/app_model.hpp"
#include "guireuse/eval_harness.hpp"
#include "guireuse/lexicon.hpp"
#include "guireuse/reuse_engine.hpp"

namespace fixtures {

inline std::string data(const std::string &rel)
{
    return std::string(GUIREUSE_DATA_DIR) + "/" + rel;
}

inline guireuse::AppModel app(const std::string &name)
{
    return guireuse::load_app_model_file(data("apps/" + name + ".json"));
}

inline guireuse::TestCase test(const std::string &name)
{
    return guireuse::load_test_file(data("tests/" + name + ".json"));
}

inline guireuse::GroundTruth truth(const std::string &name)
{
    return guireuse::load_ground_truth_file(data("truth/" + name + ".json"));
}

inline std::shared_ptr<const guireuse::EmbeddingTable> toy()
{
    static const auto table =
        std::make_shared<const guireuse::EmbeddingTable>(guireuse::EmbeddingTable::load(data("embeddings/toy.vec")));
    return table;
}

inline guireuse::ConcreteEvent click(const std::string &widget)
{
    return {guireuse::Action::click, widget, std::nullopt, std::nullopt, std::nullopt};
}

inline guireuse::ConcreteEvent input(const std::string &widget, const std::string &text)
{
    return {guireuse::Action::input, widget, text, std::nullopt, std::nullopt};
}

inline guireuse::ConcreteEvent back()
{
    return {guireuse::Action::back, "", std::nullopt, std::nullopt, std::nullopt};
}

inline guireuse::ConcreteEvent text_present(const std::string &widget, const std::string &text)
{
    return {guireuse::Action::text_present, widget, std::nullopt, text, std::nullopt};
}

/// A hand-built matched pair; score defaults to 1.
inline guireuse::MatchPair pair(std::size_t source_index, guireuse::ConcreteEvent ev, double score = 1.0,
                                guireuse::EventKind kind = guireuse::EventKind::gui)
{
    guireuse::MatchPair p;
    p.source_index = source_index;
    p.kind = kind;
    p.concrete = std::move(ev);
    p.score = score;
    return p;
}

/// The six tuples of the bundled suite: test, target app, truth.
struct Tuple {
    const char *test;
    const char *source;
    const char *target;
    const char *truth;
};

inline constexpr Tuple kSuite[] = {
    {"todolist_add_task", "todolist", "minimal", "todolist_to_minimal"},
    {"minimal_add_task", "minimal", "todolist", "minimal_to_todolist"},
    {"todolist_boot_add_task", "todolist_boot", "minimal", "todolist_boot_to_minimal"},
    {"tip_calculator_total", "tip_calculator", "tip_calc", "tip_calculator_to_tip_calc"},
    {"tip_calc_total", "tip_calc", "tip_calculator", "tip_calc_to_tip_calculator"},
    {"lightning_open_url", "lightning", "focus", "lightning_to_focus"},
};

}  // namespace fixtures

#endif  // GUIREUSE_TESTS_FIXTURES_HPP
