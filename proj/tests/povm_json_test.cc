// Copyright 2026 The compat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "compat/povm_json.h"

#include <gtest/gtest.h>

#include "compat/random_povm.h"
#include "compat/sharp_joints.h"

using namespace compat;

namespace {

std::string field_of(const std::string &text) {
    try {
        deserialize_povm(text);
    } catch (const ParseError &e) {
        return e.field();
    }
    return "<no error>";
}

std::string message_of(const std::string &text) {
    try {
        deserialize_povm(text);
    } catch (const ParseError &e) {
        return e.what();
    }
    return "<no error>";
}

}  // namespace

TEST(povm_json, canonical_text) {
    std::string expected =
        "{\n"
        "  \"dim\": 2,\n"
        "  \"effects\": {\n"
        "    \"+\": [[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]],\n"
        "    \"-\": [[[0.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]\n"
        "  }\n"
        "}\n";
    EXPECT_EQ(serialize(noisy_qubit({0, 0, 1}, 1.0)), expected);
}

TEST(povm_json, round_trip_is_exact_and_stable) {
    Rng rng(12);
    for (int rep = 0; rep < 30; rep++) {
        Povm p = random_generic_povm(2 + rep % 4, rng);
        std::string text = serialize(p);
        Povm back = deserialize_povm(text);
        ASSERT_EQ(back.labels(), p.labels());
        for (size_t k = 0; k < p.num_outcomes(); k++) {
            EXPECT_EQ(max_abs_entry_distance(back.effect(k), p.effect(k)), 0.0);
        }
        EXPECT_EQ(serialize(back), text);
    }
}

TEST(povm_json, joint_round_trip) {
    Rng rng(2);
    ComplexMatrix u = random_unitary(3, rng);
    JointPovm j = product_joint({random_pvm(u, rng), random_diagonal_povm(u, rng)}, {"P", "Q"});
    std::string text = serialize(j);
    EXPECT_TRUE(looks_like_joint(text));
    JointPovm back = deserialize_joint(text);
    EXPECT_EQ(back.component_ids(), j.component_ids());
    EXPECT_EQ(back.component_labels(), j.component_labels());
    EXPECT_EQ(serialize(back), text);
    EXPECT_FALSE(looks_like_joint(serialize(noisy_qubit({1, 0, 0}, 0.3))));
}

TEST(povm_json, field_level_errors) {
    EXPECT_EQ(field_of("{\"dim\": 2"), "");
    EXPECT_EQ(field_of("[1, 2]"), "");
    EXPECT_EQ(field_of("{\"effects\": {}}"), "dim");
    EXPECT_EQ(field_of("{\"dim\": 0, \"effects\": {}}"), "dim");
    EXPECT_EQ(field_of("{\"dim\": 9, \"effects\": {}}"), "dim");
    EXPECT_EQ(field_of("{\"dim\": 2}"), "effects");
    // Dimension mismatch in the second row.
    EXPECT_EQ(field_of(R"({"dim": 2, "effects": {"a": [[[1,0],[0,0]],[[0,0]]], "b": [[[0,0],[0,0]],[[0,0],[1,0]]]}})"),
              "effects.a[1]");
    EXPECT_EQ(field_of(R"({"dim": 2, "effects": {"a": [[[1,0],[0,"x"]],[[0,0],[0,0]]]}})"), "effects.a[0][1]");
    // Not Hermitian.
    EXPECT_EQ(field_of(R"({"dim": 2, "effects": {"a": [[[1,0],[0.5,0]],[[0,0],[0,0]]], "b": [[[0,0],[0,0]],[[0,0],[1,0]]]}})"),
              "effects.a");
    // Not PSD.
    std::string not_psd =
        R"({"dim": 2, "effects": {"a": [[[1.2,0],[0,0]],[[0,0],[-0.2,0]]], "b": [[[-0.2,0],[0,0]],[[0,0],[1.2,0]]]}})";
    EXPECT_EQ(field_of(not_psd), "effects.a");
    EXPECT_NE(message_of(not_psd).find("not positive semidefinite"), std::string::npos);
    // Incomplete.
    std::string incomplete = R"({"dim": 2, "effects": {"a": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]], "b": [[[0.4,0],[0,0]],[[0,0],[0.4,0]]]}})";
    EXPECT_EQ(field_of(incomplete), "effects");
    EXPECT_NE(message_of(incomplete).find("completeness residual exceeded"), std::string::npos);
}

TEST(povm_json, joint_errors) {
    EXPECT_THROW(deserialize_joint(R"({"dim": 1, "effects": {"a": [[[1,0]]]}})"), ParseError);
    // A missing tuple counts as a zero effect.
    JointPovm implicit = deserialize_joint(
        R"({"dim": 1, "components": ["A","B"], "effects": {"0|0": [[[0.5,0]]], "1|1": [[[0.5,0]]], "0|1": [[[0,0]]]}})");
    EXPECT_EQ(implicit.effect(implicit.tuple_index({1, 0}))(0, 0), Complex(0, 0));
    std::string missing = R"({"dim": 1, "components": ["A","B"], "effects": {"0|0": [[[0.5,0]]], "1|1": [[[0.3,0]]], "0|1": [[[0,0]]]}})";
    try {
        deserialize_joint(missing);
        FAIL() << "missing tuple accepted";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.field(), "effects");
    }
    std::string arity = R"({"dim": 1, "components": ["A","B"], "effects": {"0": [[[1,0]]]}})";
    try {
        deserialize_joint(arity);
        FAIL() << "wrong arity accepted";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.field(), "effects.0");
    }
}

TEST(povm_json, tolerance_is_configurable) {
    std::string slightly_off = R"({"dim": 1, "effects": {"a": [[[0.5,0]]], "b": [[[0.5000001,0]]]}})";
    EXPECT_THROW(deserialize_povm(slightly_off), ParseError);
    Tolerances loose;
    loose.complete = 1e-6;
    EXPECT_NO_THROW(deserialize_povm(slightly_off, loose));
}
