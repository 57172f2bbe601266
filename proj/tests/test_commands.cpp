// Copyright 2026 The jetforge Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//         http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.


#include "jetforge/commands.hpp"
#include "jetforge/error.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace jetforge;
using json = nlohmann::json;

namespace {

json run(const std::string& command, const CommandFlags& flags, const std::string& input = "")
{
    return json::parse(run_command(command, flags, input, 1));
}

} // namespace

TEST_CASE("command table")
{
    CHECK(command_names().size() == 21);
    CHECK_THROWS_AS(run_command("frobnicate", {}, "", 1), UsageError);
}

TEST_CASE("jet command")
{
    auto out = run("jet", {{"map", "x1+x1^2"}, {"at", "0"}, {"order", "2"}});
    CHECK(out["order"] == 2);
    CHECK(out["source_point"] == json::array({"0/1"}));
    CHECK(out["components"][0][0]["index"] == json::array({1}));
    CHECK(out["components"][0][0]["coeff"] == "1/1");
    CHECK(out["components"][0][1]["index"] == json::array({2}));

    auto text = run_command("jet", {{"map", "x1+x1^2"}, {"at", "0"}, {"order", "2"}}, "", 1);
    CHECK(text == run_command("jet", {{"map", "x1+x1^2"}, {"at", "0"}, {"order", "2"}}, "", 2));

    CHECK_THROWS_AS(run("jet", {{"map", "sin("}, {"at", "0"}, {"order", "2"}}), ValidationError);
    CHECK_THROWS_AS(run("jet", {{"map", "sin(x1)"}, {"at", "0"}, {"order", "2"}}), PreconditionError);
    auto f = run("jet", {{"map", "sin(x1)"}, {"at", "0"}, {"order", "3"}, {"float", "1"}});
    CHECK(f["components"][0][0]["coeff"].is_number());
}

TEST_CASE("compose and invert round trip through JSON")
{
    auto j = run_command("jet", {{"map", "x1+x1^2, x2-x1*x2"}, {"at", "0,0"}, {"order", "3"}}, "", 1);
    auto inv = run_command("invert", {}, j, 1);
    json pair{{"outer", json::parse(j)}, {"inner", json::parse(inv)}};
    auto id = run("compose", {}, pair.dump());
    auto expected = run("jet", {{"map", "x1, x2"}, {"at", "0,0"}, {"order", "3"}});
    CHECK(id == expected);
}

TEST_CASE("malformed and wrongly typed payloads")
{
    CHECK_THROWS_AS(run("invert", {}, "{"), ValidationError);
    CHECK_THROWS_AS(run("invert", {}, "[1,2]"), ValidationError);
    json floaty{{"m", 2}, {"spaces", {{{1.5, 0}}, {{0, 1}}}}};
    CHECK_THROWS_AS(run("transversal", {{"mode", "cap"}}, floaty.dump()), ValidationError);
    json few{{"m", 2}, {"spaces", {{{1, 0}}}}};
    CHECK_THROWS(run("transversal", {{"mode", "cap"}}, few.dump()));
}

TEST_CASE("transversal command")
{
    json in{{"m", 3},
            {"spaces", {{{0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}}}}};
    auto out = run("transversal", {{"mode", "cap"}}, in.dump());
    CHECK(out == json{{"subsets_checked", 7}, {"transversal", true}});
    auto lines = in;
    lines["spaces"] = {{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}};
    out = run("transversal", {{"mode", "cap"}}, lines.dump());
    CHECK(out["transversal"] == false);
    CHECK(out["failing_subset"] == json::array({1, 2}));
}

TEST_CASE("itertangent commands")
{
    json x{{"m", 1},
           {"n", 1},
           {"order", 2},
           {"source_point", {"0"}},
           {"target_point", {"0"}},
           {"blocks", {{{"S", {1}}, {"tensor", {{"2"}}}},
                       {{"S", {2}}, {"tensor", {{"3"}}}},
                       {{"S", {1, 2}}, {"tensor", {{{"5"}}}}}}}};
    json v{{"order", 2},
           {"base_point", {"0"}},
           {"blocks", {{{"S", {1}}, {"vector", {"7"}}}, {{"S", {2}}, {"vector", {"11"}}}, {{"S", {1, 2}}, {"vector", {"13"}}}}}};
    auto out = run("mu-eval", {}, json{{"jet", x}, {"vector", v}}.dump());
    CHECK(out["blocks"][2]["vector"] == json::array({"411/1"}));

    auto q = run("quasi-extract", {}, x.dump());
    CHECK(q["coefficients"]["S=[1,2];P=[[1,2]]"] == json::parse(R"([["2/1"]])"));
    CHECK(q["coefficients"]["S=[1,2];P=[[1],[2]]"] == json::parse(R"([[["5/1"]]])"));

    auto witness = q;
    witness["coefficients"]["S=[1,2];P=[[1,2]]"] = json::parse(R"([["7"]])");
    auto comp = run("quasi-compose", {}, json{{"outer", witness}, {"inner", q}}.dump());
    CHECK(comp["nonholonomic"] == false);
    comp = run("quasi-compose", {}, json{{"outer", q}, {"inner", q}}.dump());
    CHECK(comp["nonholonomic"] == true);
    CHECK(comp.contains("nonholonomic_jet"));
}

TEST_CASE("dims and weil commands")
{
    auto d = run("dims", {{"m", "1"}, {"n", "1"}, {"r", "2"}});
    CHECK(d == json{{"holonomic", 2}, {"nonholonomic", 3}, {"quasijet", 4}});
    auto w = run("weil", {{"k", "2"}, {"r", "2"}});
    CHECK(w["dim"] == 6);
    auto t = run("weil", {}, json{{"tensor", {json{{"profile", {{"k", 1}, {"r", 1}}}}, json{{"profile", {{"k", 1}, {"r", 1}}}}}}}.dump());
    CHECK(t["dim"] == 4);
    auto f = run("dims", {}, json{{"dims", {1, 1}}, {"m", 2}}.dump());
    CHECK(f["coincidence"] == true);
}

TEST_CASE("ppgroup command")
{
    json in{{"poset", {{"size", 2}, {"leq", {{1, 2}}}}}, {"p", {1, 2}}, {"matrix", json::parse(R"([["2", "3"], ["0", "5"]])")}};
    CHECK(run("ppgroup", {}, in.dump())["member"] == true);
    in["matrix"] = json::parse(R"([["1", "0"], ["4", "1"]])");
    CHECK(run("ppgroup", {}, in.dump())["member"] == false);
}
