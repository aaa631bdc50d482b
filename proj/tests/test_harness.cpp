#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "prokit/battery.hpp"
#include "prokit/harness.hpp"

using namespace prokit;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(PROKIT_SOURCE_DIR) + "/fixtures/" + name);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Least c with |0 : x^c| = |0 : x^(c+1)| for multiplication by 2 on Z/2^n, by enumeration.
unsigned two_power_torsion_index(unsigned n) {
  const long q = 1L << n;
  auto killed = [&](unsigned j) {
    long count = 0;
    for (long a = 0; a < q; ++a)
      if (((a << j) % q) == 0) ++count;
    return count;
  };
  unsigned c = 0;
  while (killed(c) != killed(c + 1)) ++c;
  return c;
}

// Same for multiplication by t on Z/2[t]/(t^n), elements as coefficient bitmasks.
unsigned polynomial_torsion_index(unsigned n) {
  const unsigned long mask = (1UL << n) - 1;
  auto killed = [&](unsigned j) {
    long count = 0;
    for (unsigned long b = 0; b <= mask; ++b)
      if (((b << j) & mask) == 0) ++count;
    return count;
  };
  unsigned c = 0;
  while (killed(c) != killed(c + 1)) ++c;
  return c;
}

std::size_t count_lines(const std::string& s) { return std::size_t(std::count(s.begin(), s.end(), '\n')); }

const char* kMinimal = R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
  "sequences": {"x": [2]}, "analysis": ["profile"]})";

}  // namespace

TEST_CASE("parse minimal task fills defaults") {
  TaskSpec t = parse_spec(kMinimal);
  REQUIRE(t.ring);
  CHECK(t.ring->order() == 8);
  REQUIRE(t.analyses.size() == 1);
  const AnalysisSpec& a = t.analyses[0];
  CHECK(a.kind == "profile");
  CHECK(a.profile == "lipman");
  CHECK(a.label == "profile:lipman");
  CHECK(a.bounds.n_max == 3);
  CHECK(a.bounds.m_max == 0);
  CHECK(a.bounds.i_max == 0);
  CHECK(a.module.order() == 8);
  REQUIRE(a.xs.size() == 1);
  CHECK(a.xs[0] == t.ring->from_integer(2));
  CHECK_FALSE(t.sweep);
}

TEST_CASE("parse errors") {
  SUBCASE("undeclared element") {
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
      "sequences": {"x": ["y"]}, "analysis": ["profile"]})"),
                    UnknownReference);
  }
  SUBCASE("undeclared module and sequence") {
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
      "analysis": [{"kind": "profile", "module": "N", "sequence": [2]}]})"),
                    UnknownReference);
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
      "analysis": [{"kind": "profile", "sequence": "s"}]})"),
                    UnknownReference);
  }
  SUBCASE("weak profile with i_max 0") {
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
      "sequences": {"x": [2]}, "analysis": [{"kind": "profile", "profile": "weak", "i_max": 0}]})"),
                    BoundViolation);
  }
  SUBCASE("nonpositive bounds and empty sweep range") {
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
      "sequences": {"x": [2]}, "bounds": {"n_max": 0}, "analysis": ["profile"]})"),
                    BoundViolation);
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "sweep": {"family": "truncated_two_power",
      "from": 5, "to": 3, "sequence": ["x"]}})"),
                    BoundViolation);
  }
  SUBCASE("field errors carry line and field") {
    try {
      parse_spec("{\"schema\": 1,\n \"ring\": {\"kind\": \"zmod\", \"modulus\": 8},\n \"analysis\": [\n"
                 "  {\"kind\": \"profile\",\n   \"n_max\": \"three\"}]}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 5);
      CHECK(e.field() == "analysis[0].n_max");
    }
    try {
      parse_spec("{\"schema\": 1,\n \"ring\": {\"kind\": \"zmod\" \"modulus\": 8}}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("schema, unknown fields and kinds") {
    CHECK_THROWS_AS(parse_spec(R"({"ring": {"kind": "zmod", "modulus": 8}, "analysis": ["profile"]})"), ParseError);
    CHECK_THROWS_AS(parse_spec(R"({"schema": 2, "ring": {"kind": "zmod", "modulus": 8}})"), ParseError);
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8, "extra": 1},
      "sequences": {"x": [2]}, "analysis": ["profile"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "field"}, "analysis": ["profile"]})"), ParseError);
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
      "sequences": {"x": [2]}, "analysis": ["magic"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 8},
      "sequences": {"x": [[1, 2]]}, "analysis": ["profile"]})"),
                    ParseError);
  }
}

TEST_CASE("parse ring and module kinds") {
  TaskSpec t = parse_spec(R"({
    "schema": 1,
    // comments are allowed
    "ring": {"kind": "product", "factors": [{"kind": "zmod", "modulus": 4},
                                            {"kind": "truncated_polynomial", "modulus": 3, "degree": 2}]},
    "elements": {"a": [2, 0, 0], "t": [0, 0, 1]},
    "modules": {
      "C": {"kind": "cyclic", "relations": ["a"]},
      "I": {"kind": "ideal", "generators": ["t"]},
      "S": {"kind": "sum", "of": ["C", "I"]},
      "D": {"kind": "dual", "of": "S"},
      "P": {"kind": "presentation", "generators": 2, "relations": [["a", "t"]]}
    },
    "sequences": {"xs": ["a", "t"]},
    "analysis": [{"kind": "profile", "module": "D"}, {"kind": "profile", "module": "P"}]
  })");
  CHECK(t.ring->order() == 36);
  // Z/4 / (2) x Z/3[t]/(t^2) / (0)  and the ideal (t) of order 3.
  CHECK(t.analyses[0].module.order() == 2 * 9 * 3);
  // R^2 / R(a, t): |R|^2 / |R (a, t)|, and R (a, t) = {(r a, r t)} has order |R| / |ann(a) cap ann(t)|.
  CHECK(t.analyses[1].module.order() == 36 * 36 / 6);

  TaskSpec q = parse_spec(R"({"schema": 1,
    "ring": {"kind": "quotient", "ring": {"kind": "zmod", "modulus": 12}, "ideal": [4]},
    "sequences": {"x": [2]}, "analysis": ["profile"]})");
  CHECK(q.ring->order() == 4);

  TaskSpec s = parse_spec(R"({"schema": 1,
    "ring": {"kind": "structure", "orders": [3, 3], "constants": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
             "unit": [1, 0], "names": {"e": [0, 1]}},
    "sequences": {"x": ["e"]}, "analysis": ["profile"]})");
  CHECK(s.ring->order() == 9);
  CHECK(s.analyses[0].xs[0] == Vec{0, 1});
}

TEST_CASE("run z/8 profile and single element law") {
  Report r = run_task(parse_spec(fixture("z8_profile.json")));
  CHECK(r.exit_code() == 0);
  REQUIRE(r.entries.size() == 3);
  const unsigned c = two_power_torsion_index(3);
  CHECK(c == 3);
  const Profile& p = r.entries[0].outcome->profiles[0].second;
  for (unsigned n = 1; n <= 5; ++n) CHECK(p.at(1, n).m == n + c);
  CHECK(r.entries[1].outcome->profiles[0].second.entries == p.entries);
  CHECK(r.entries[2].outcome->passed());
}

TEST_CASE("run z/12 verify battery") {
  Report r = run_task(parse_spec(fixture("z12_battery.json")));
  CHECK(r.exit_code() == 0);
  CHECK(r.entries.size() >= 8);
  for (const auto& e : r.entries) {
    INFO(e.label);
    CHECK(e.status() == Status::pass);
  }
}

TEST_CASE("prism style fixture") {
  Report r = run_task(parse_spec(fixture("prism_style.json")));
  REQUIRE(r.entries.size() == 2);
  const CheckOutcome& o = *r.entries[0].outcome;
  CHECK(o.fact_value("b_divisibility") == true);
  const Profile& p = o.profiles[0].second;
  for (unsigned n = 1; n <= p.n_max; ++n) CHECK(p.at(1, n).m == n);
  CHECK(r.entries[1].outcome->fact_value("effective") == false);
}

TEST_CASE("family sweeps") {
  SUBCASE("sequence (x) diverges") {
    TaskSpec t = parse_spec(fixture("ex1_truncated_x.json"));
    Report r = run_task(t);
    REQUIRE(r.sweep);
    std::vector<long> values, expected;
    for (const auto& p : r.sweep->points) values.push_back(p.tracked[0]);
    for (unsigned n = 2; n <= 6; ++n) {
      unsigned c = 0;
      for (unsigned level = 1; level <= n; ++level) c = std::max(c, two_power_torsion_index(level));
      expected.push_back(long(1 + c));
    }
    CHECK(values == expected);
    CHECK(values == std::vector<long>{3, 4, 5, 6, 7});
    CHECK(r.sweep->divergent);
    CHECK_FALSE(r.sweep->bounded);
    CHECK(r.exit_code() == 0);
  }
  SUBCASE("sequence (1, x) is bounded") {
    Report r = run_task(parse_spec(fixture("ex1_truncated_one_x.json")));
    REQUIRE(r.sweep);
    for (const auto& pt : r.sweep->points) {
      const Profile& p = pt.profiles[0].second;
      for (unsigned i = 1; i <= 2; ++i)
        for (unsigned n = 1; n <= p.n_max; ++n) CHECK(p.at(i, n).m == n);
    }
    CHECK(r.sweep->bounded);
    CHECK_FALSE(r.sweep->divergent);
    CHECK(r.exit_code() == 0);
  }
  SUBCASE("truncated polynomial torsion index") {
    Report r = run_task(parse_spec(fixture("ex2_truncated.json")));
    REQUIRE(r.sweep);
    unsigned n = 2;
    for (const auto& pt : r.sweep->points) {
      unsigned c = 0;
      for (unsigned level = 1; level <= n; ++level) c = std::max(c, polynomial_torsion_index(level));
      CHECK(pt.parameter == n);
      CHECK(pt.tracked[0] == long(c));
      CHECK(pt.tracked[0] == long(n));
      ++n;
    }
    CHECK(r.sweep->divergent);
  }
  SUBCASE("failed expectation is a counterexample") {
    TaskSpec t = parse_spec(fixture("ex1_truncated_one_x.json"));
    t.sweep->expect = "divergent";
    CHECK(run_task(t).exit_code() == 1);
  }
}

TEST_CASE("series flags are exact") {
  CHECK(series_flags({1, 2, 3}) == std::pair{true, false});
  CHECK(series_flags({1, 2, 2}) == std::pair{false, false});
  CHECK(series_flags({3, 2, 4}) == std::pair{false, false});
  CHECK(series_flags({2, 2, 2}) == std::pair{false, true});
  CHECK(series_flags({2}) == std::pair{false, false});
  CHECK(series_flags({1, -1, 3}) == std::pair{false, false});
}

TEST_CASE("exit codes") {
  TaskSpec t = parse_spec(kMinimal);
  RunOptions o;
  o.m_max = 3;  // entry (1,1) = 4 lies beyond the budget
  Report r = run_task(t, o);
  CHECK(r.status() == Status::inconclusive);
  CHECK(r.exit_code() == 2);
  CHECK_FALSE(r.entries[0].outcome->profiles[0].second.certificates.empty());

  Report ax = check_axioms(R"({"schema": 1, "ring": {"kind": "structure", "orders": [2, 2],
    "constants": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "unit": [0, 1]}})");
  CHECK(ax.exit_code() == 1);
  CHECK(ax.entries[0].outcome->check_value("unit") == false);
  CHECK(ax.entries[0].outcome->check_value("commutativity") == true);

  Report ok = check_axioms(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 12}})");
  CHECK(ok.exit_code() == 0);

  Report bad_module = check_axioms(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 4},
    "modules": {"M": {"kind": "structure", "orders": [2], "actions": [[[0]]]}}})");
  CHECK(bad_module.exit_code() == 1);

  TaskSpec cover = parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 12},
    "sequences": {"i": [2], "c": [2]},
    "analysis": [{"kind": "effective_cartier", "ideal": "i", "covering": "c"}]})");
  Report nc = run_task(cover);
  REQUIRE(nc.entries[0].error);
  CHECK(nc.entries[0].error->type == "NotCovering");
  CHECK(nc.exit_code() == 2);
}

TEST_CASE("emit formats") {
  Report empty;
  CHECK(emit_report(empty, Format::csv) == "i,n,m,conclusive\n");
  Json j = Json::parse(emit_report(empty, Format::json));
  CHECK(j["entries"].empty());
  CHECK(j["schema"] == 1);
  CHECK(report_from_json(j) == empty);
  CHECK_FALSE(emit_report(empty, Format::text).empty());

  TaskSpec t = parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 12},
    "sequences": {"xs": [2, 3]}, "bounds": {"n_max": 4}, "analysis": ["profile"]})");
  Report r = run_task(t);
  std::string csv = emit_report(r, Format::csv);
  CHECK(count_lines(csv) == 1 + 2 * 4);

  Report s = run_task(parse_spec(fixture("ex1_truncated_x.json")));
  Json sj = Json::parse(emit_report(s, Format::json));
  REQUIRE(sj["sweep"]["points"].size() == 5);
  for (const auto& p : sj["sweep"]["points"]) CHECK(p["schema"] == 1);
  CHECK(count_lines(emit_report(s, Format::csv)) == 1 + 5 * 3);
}

TEST_CASE("json round trip") {
  std::vector<Report> reports;
  reports.push_back(run_task(parse_spec(fixture("z12_battery.json"))));
  reports.push_back(run_task(parse_spec(fixture("ex1_truncated_one_x.json"))));
  reports.push_back(run_task(parse_spec(fixture("prism_style.json"))));
  RunOptions o;
  o.m_max = 3;
  reports.push_back(run_task(parse_spec(kMinimal), o));
  reports.push_back(run_task(parse_spec(R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 12},
    "sequences": {"i": [2], "c": [2]},
    "analysis": [{"kind": "effective_cartier", "ideal": "i", "covering": "c"}]})")));
  for (const auto& r : reports) {
    Json j = Json::parse(emit_report(r, Format::json));
    Report back = report_from_json(j);
    CHECK(back == r);
    CHECK(report_body(back) == report_body(r));
  }
}

TEST_CASE("determinism of report bodies") {
  const char* task = R"({"schema": 1, "ring": {"kind": "zmod", "modulus": 12}, "sequences": {"xs": [2, 3]},
    "analysis": ["verify", {"kind": "random_battery", "battery": "single_element_law", "count": 10},
                 {"kind": "random_battery", "battery": "cartier", "count": 5}]})";
  RunOptions o;
  o.seed = 77;
  std::string a = report_body(run_task(parse_spec(task), o));
  o.jobs = 1;
  std::string b = report_body(run_task(parse_spec(task), o));
  CHECK(a == b);
  o.seed = 78;
  CHECK(report_body(run_task(parse_spec(task), o)) != a);
}

TEST_CASE("batteries are seeded") {
  CheckOutcome a = run_battery("snf", 5, 20);
  CheckOutcome b = run_battery("snf", 5, 20);
  a.seconds = b.seconds = 0;
  CHECK(a == b);
  CHECK(a.passed());
  CHECK_THROWS_AS(run_battery("nope", 1), std::invalid_argument);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Instance in = random_instance(rng);
    CHECK(in.ring->order() <= 64);
    CHECK(in.module.order() <= 256);
    CHECK_FALSE(in.module.is_zero());
    CHECK(in.xs.size() >= 1);
    CHECK(in.xs.size() <= 3);
    std::vector<Vec> cover = random_covering(rng, in.ring);
    CHECK(is_covering(*in.ring, cover).covers);
  }
}
