// Copyright 2026 The Spintomo Authors
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

#include "spintomo/json_io.hpp"

#include <random>

#include <gtest/gtest.h>

#include "spintomo/errors.hpp"
#include "test_util.hpp"

using namespace spintomo;
using json_io::Json;

TEST(JsonIo, StateRoundTripIsBitExact) {
    std::mt19937_64 rng(1);
    const auto rho = testutil::random_mixed(rng, {SpinValue::from_twice(2), spin_half()});
    const Json j = json_io::parse(json_io::state_to_json(rho).dump());
    const auto back = json_io::state_from_json(j);
    EXPECT_EQ(back.system(), rho.system());
    EXPECT_EQ((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(JsonIo, StateValidation) {
    EXPECT_THROW(json_io::state_from_json(json_io::parse(R"({"system":[1],"matrix":[[{"re":0.5,"im":0},{"re":0,"im":0}],[{"re":0,"im":0},{"re":0.6,"im":0}]]})")),
                 InvalidState);
    EXPECT_THROW(json_io::state_from_json(json_io::parse(R"({"system":[1,1],"matrix":[[{"re":1,"im":0}]]})")), FormatError);
    EXPECT_THROW(json_io::state_from_json(json_io::parse(R"({"matrix":[]})")), FormatError);
    EXPECT_THROW(json_io::parse("{"), FormatError);
    EXPECT_THROW(json_io::state_from_json(json_io::parse(R"({"system":[-1],"matrix":[]})")), FormatError);
}

TEST(JsonIo, CoefficientRoundTrip) {
    std::mt19937_64 rng(2);
    const auto sys = testutil::qubits(3);
    const CMatrix a = testutil::random_matrix(rng, 8);
    for (const auto& table : {decompose_product(a, sys), decompose_coupled(a, sys), decompose(a.topLeftCorner(2, 2), spin_half())}) {
        const auto back = json_io::coeffs_from_json(json_io::parse(json_io::coeffs_to_json(table).dump()));
        EXPECT_EQ(back.kind(), table.kind());
        EXPECT_EQ(back.entries(), table.entries());
    }
    EXPECT_THROW(json_io::coeffs_from_json(json_io::parse(R"({"basis":"single","system":[1],"entries":[{"index":[2,0],"re":1,"im":0}]})")),
                 FormatError);
    EXPECT_THROW(json_io::coeffs_from_json(json_io::parse(R"({"basis":"weird","system":[1],"entries":[]})")), FormatError);
}

TEST(JsonIo, TomogramRoundTrip) {
    std::mt19937_64 rng(3);
    SimulationOptions opt;
    opt.noise_sigma = 0.01;
    opt.seed = 9;
    const auto t = simulate_tomogram(testutil::random_mixed(rng, testutil::qubits(2)), opt);
    const auto back = json_io::tomogram_from_json(json_io::parse(json_io::tomogram_to_json(t).dump()));
    EXPECT_EQ(back.seed, 9u);
    EXPECT_EQ(back.noise_sigma, 0.01);
    ASSERT_EQ(back.records.size(), t.records.size());
    for (std::size_t i = 0; i < t.records.size(); ++i) {
        EXPECT_EQ(back.records[i].value, t.records[i].value);
        EXPECT_EQ(back.records[i].block, t.records[i].block);
    }
    EXPECT_EQ(max_abs_difference(invert_tomogram(back), invert_tomogram(t)), 0.0);
}

TEST(JsonIo, ErrorProducts) {
    EXPECT_TRUE(json_io::error_product_from_json(Json("none")).empty());
    const ErrorProduct chain = {{0, Axis::x}, {1, Axis::z}};
    EXPECT_EQ(json_io::error_product_from_json(json_io::error_product_to_json(chain)), chain);
    const ErrorProduct one = {{2, Axis::y}};
    EXPECT_EQ(json_io::error_product_from_json(json_io::error_product_to_json(one)), one);
    EXPECT_EQ(json_io::error_product_from_json(json_io::parse(R"({"detected":{"site":1,"axis":"z"}})")),
              (ErrorProduct{{1, Axis::z}}));
    EXPECT_THROW(json_io::error_product_from_json(Json("X")), FormatError);
    EXPECT_THROW(json_io::error_product_from_json(json_io::parse(R"({"site":0,"axis":"q"})")), FormatError);
}

TEST(JsonIo, SpinSpecAndSources) {
    const auto spec = json_io::spin_spec_from_json(
        json_io::parse(R"({"n":3,"mu_b0":0.5,"couplings":[{"i":2,"j":0,"J":1.5}],"model":"heisenberg"})"));
    EXPECT_EQ(spec.n, 3);
    EXPECT_EQ(spec.coupling(0, 2), 1.5);
    EXPECT_EQ(spec.model, CouplingModel::heisenberg);
    EXPECT_THROW(json_io::spin_spec_from_json(json_io::parse(R"({"n":2,"mu_b0":0,"couplings":[{"i":0,"j":4,"J":1}]})")),
                 std::invalid_argument);
    const auto src = json_io::sources_from_json(json_io::parse(R"({"sources":[{"e":1,"r":0.5,"theta":0.1,"phi":0.2}]})"));
    ASSERT_EQ(src.size(), 1u);
    EXPECT_EQ(src[0].r, 0.5);
    EXPECT_THROW(json_io::sources_from_json(json_io::parse(R"({"sources":[{"e":1,"r":-0.5,"theta":0,"phi":0}]})")),
                 std::invalid_argument);
}
