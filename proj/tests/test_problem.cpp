#include <doctest.h>

#include <functional>
#include <json.hpp>

#include "selfsim/commands.hpp"
#include "selfsim/error.hpp"
#include "selfsim/problem.hpp"

using namespace selfsim;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Internal;
}

GroupElement el(long x, long y, long z) { return GroupElement{{x, y, z}}; }

}  // namespace

TEST_CASE("bundled documents") {
  ProblemSpec h = bundled_problem("heisenberg");
  CHECK(h.model == GroupModel::unitriangular(3));
  REQUIRE(h.digits.has_value());
  CHECK(h.digits->reps == std::vector<GroupElement>{el(0, 0, 0), el(0, 1, 0), el(0, 0, 1), el(0, 1, 1)});
  CHECK(h.first_letter == 1);
  REQUIRE(h.elements.size() == 3);
  CHECK(h.elements[0].first == "a");
  CHECK(h.generators == std::vector<std::string>{"a", "b"});
  CHECK(h.resolve_element("c") == el(0, 0, 1));
  CHECK(h.resolve_element("e") == el(0, 0, 0));
  CHECK(h.resolve_element("1,-2,3") == el(1, -2, 3));
  CHECK(code_of([&] { h.resolve_element("d"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { h.resolve_element("1,2"); }) == ErrorCode::ModelMismatch);

  ProblemSpec o = bundled_problem("odometer");
  CHECK(o.model == GroupModel::abelian(1));
  CHECK(o.first_letter == 0);
  CHECK(code_of([] { bundled_problem("nope"); }) == ErrorCode::Usage);
}

TEST_CASE("malformed documents") {
  CHECK(code_of([] { parse_problem("{"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_problem("[]"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_problem(R"({"model": {"kind": "unitriangular", "n": 3}})"); }) == ErrorCode::Parse);
  CHECK(code_of([] {
          parse_problem(R"({"model": {"kind": "klein"}, "subgroup": {"moduli": [1]}, "phi": [["1"]]})");
        }) == ErrorCode::Parse);
  CHECK(code_of([] {
          parse_problem(R"({"model": {"kind": "abelian", "rank": 1}, "subgroup": {"lattice": [[2]]},
                            "phi": [["1/0"]]})");
        }) == ErrorCode::Parse);
  CHECK(code_of([] {
          parse_problem(R"({"model": {"kind": "unitriangular", "n": 3}, "subgroup": {"moduli": [1, 2]},
                            "phi": [["1"]]})");
        }) != ErrorCode::Internal);
  CHECK(code_of([] {
          parse_problem(R"({"model": {"kind": "abelian", "rank": 1}, "subgroup": {"lattice": [[2]]},
                            "phi": [["1/2"]], "generators": ["a"]})");
        }) == ErrorCode::Parse);
  CHECK(code_of([] { load_problem("/nonexistent/problem.json"); }) != ErrorCode::Internal);
  ProblemSpec no_digits = parse_problem(R"({"model": {"kind": "abelian", "rank": 1}, "subgroup": {"lattice": [[2]]},
                                            "phi": [["1/2"]]})");
  CHECK(code_of([&] { no_digits.action(); }) == ErrorCode::Usage);
}

TEST_CASE("digits serialise back into documents") {
  const DigitSet d{{el(1, 0, 0), el(0, 1, 0), el(0, 0, 1), el(0, 1, 1)}};
  auto j = nlohmann::json::parse(digits_to_json(d));
  CHECK(j["digits"] == nlohmann::json::parse("[[1,0,0],[0,1,0],[0,0,1],[0,1,1]]"));
  auto doc = nlohmann::json::parse(R"({"model": {"kind": "unitriangular", "n": 3}, "subgroup": {"moduli": [1, 2, 2]},
                                       "phi": [["1", "0", "0"], ["0", "1/2", "0"], ["0", "0", "1/2"]]})");
  doc["digits"] = j["digits"];
  CHECK(parse_problem(doc.dump()).digits == d);
}

TEST_CASE("command outputs") {
  ProblemSpec h = bundled_problem("heisenberg");
  CHECK(run_act(h, "e", "1234").text == "1234\n");
  CHECK(run_act(h, "a", "22").text == "44\n");
  CommandOutput st = run_state(h, "a", "4");
  CHECK(st.text.find("image 2\n") != std::string::npos);
  CHECK(st.text.find("b^{-1}ab") != std::string::npos);
  CHECK(st.text.find("(agrees)") != std::string::npos);

  CommandOutput aut = run_automaton(h, {"a"}, {});
  CHECK(aut.exit_code == 0);
  CHECK(aut.text.rfind("Finite: 2 states, 8 edges", 0) == 0);
  CHECK(aut.dot.find("digraph") != std::string::npos);

  CommandOutput rec = run_recursion(h, {"b"});
  CHECK(rec.text == "b(1v)=2v\nb(2v)=1b(v)\nb(3v)=4v\nb(4v)=3b(v)\n");

  CommandOutput cls = run_classify(h, true);
  auto j = nlohmann::json::parse(cls.text);
  CHECK(j["verdict"] == "MixedFiniteStateCapable");
  CHECK(j["core_trivial"] == true);
  CHECK(run_classify(h, false).text.rfind("verdict: MixedFiniteStateCapable\n", 0) == 0);

  CHECK(nlohmann::json::parse(run_digits(h, "finite", 1).text)["digits"].size() == 4);
  CHECK(nlohmann::json::parse(run_digits(h, "nonfinite", 1).text)["digits"][0] == nlohmann::json::parse("[1,0,0]"));
  CHECK(code_of([&] { run_digits(h, "other", 1); }) == ErrorCode::Usage);

  ProblemSpec o = bundled_problem("odometer");
  CommandOutput sch = run_schreier(o, 10, "", true);
  CHECK(sch.text.find("level 10: 1024 vertices, 1024 edges") != std::string::npos);
  CHECK(sch.csv.rfind("r,ball_size\n", 0) == 0);
  CHECK(sch.dot.rfind("graph level10", 0) == 0);
  CHECK(code_of([&] { run_schreier(o, 10, "01"); }) == ErrorCode::Usage);
}
