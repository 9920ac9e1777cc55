#include <gtest/gtest.h>

#include "morita/scenario.hpp"

using namespace morita;
using nlohmann::json;

namespace {

Errc code_of(const json& j) {
  try {
    parse_scenario(j);
  } catch (const MathError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << j.dump();
  return Errc::Unsupported;
}

}  // namespace

TEST(Scenario, FullDivisionScenario) {
  auto s = parse_scenario(json::parse(R"({
    "field": {"kind": "function", "base": {"kind": "rationals"}, "var": "s"},
    "valuation": {"kind": "gauss", "inner": {"kind": "padic", "p": 3}},
    "quaternion": {"d": -1, "t": "s"},
    "form": {"diag": [{"a": 1}, {"b": "2/3", "c": 1}]},
    "generator": {"n": 1, "n_max": 3, "twist": 2, "algebra": "fixed"},
    "trials": 10, "seed": 5, "budget": {"height": 2, "max_vectors": 1000}
  })"));
  EXPECT_EQ(s.field->describe(), "Q(s)");
  EXPECT_EQ(s.valuation->kind(), ValuationKind::Gauss);
  EXPECT_EQ(s.algebra->to_string(), "(-1, s)");
  EXPECT_EQ(s.form->to_string(), "<i, 2/3*j + ij>");
  EXPECT_EQ(s.generator->n_max, 3u);
  EXPECT_EQ(*s.trials, 10u);
  EXPECT_EQ(*s.seed, 5u);
  EXPECT_EQ(s.budget.height, 2);
  EXPECT_EQ(s.budget.max_vectors, 1000);
}

TEST(Scenario, GramMatrixAndPoint) {
  auto s = parse_scenario(json::parse(R"({
    "field": {"kind": "rationals"},
    "quaternion": {"d": 1, "t": 1},
    "form": {"gram": [[{"a": 1}, {"w": 1}], [{"w": -1}, {"b": 1}]]},
    "point": {"x": "3/5", "y": "4/5"}
  })"));
  EXPECT_EQ(s.form->rank(), 2u);
  EXPECT_FALSE(s.form->is_diagonal());
  EXPECT_EQ(s.point->x.to_string(), "3/5");
}

TEST(Scenario, ConicHalfNormValuation) {
  auto s = parse_scenario(json::parse(R"({
    "field": {"kind": "conic", "base": {"kind": "function", "base": {"kind": "rationals"}, "var": "s"},
              "d": -1, "t": "s"},
    "valuation": {"kind": "conic_half_norm", "residue_conic": "nonsplit",
                  "inner": {"kind": "gauss", "inner": {"kind": "gauss", "inner": {"kind": "padic", "p": 3}}}}
  })"));
  EXPECT_EQ(s.valuation->kind(), ValuationKind::ConicHalfNorm);
  EXPECT_EQ(s.valuation->value(parse_element(s.field, "y")), 0);
  EXPECT_EQ(s.valuation->value(parse_element(s.field, "3*y + 3*x + 9")), 1);
}

TEST(Scenario, Rejections) {
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "colour": 1})")), Errc::InvalidDescriptor);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "reals"}})")), Errc::InvalidDescriptor);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "finite", "p": 2}})")), Errc::EvenResidueChar);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "quaternion": {"d": "2**", "t": 1}})")),
            Errc::ParseError);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "quaternion": {"d": 0, "t": 1}})")),
            Errc::InvalidDescriptor);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"},
                                    "valuation": {"kind": "gauss", "inner": {"kind": "padic", "p": 3}}})")),
            Errc::InvalidDescriptor);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "form": {"diag": [{"a": 1}]}})")),
            Errc::InvalidDescriptor);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "quaternion": {"d": 2, "t": 3},
                                    "form": {"diag": [{"w": 1}]}})")),
            Errc::InvalidDescriptor);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "entries": [1, 0]})")), Errc::ZeroEntry);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "generator": {"algebra": "any"}})")),
            Errc::InvalidDescriptor);
  EXPECT_EQ(code_of(json::parse(R"({"field": {"kind": "rationals"}, "trials": "many"})")), Errc::InvalidDescriptor);
}

TEST(Scenario, ReportJson) {
  auto s = parse_scenario(json::parse(R"({
    "field": {"kind": "rationals"}, "valuation": {"kind": "padic", "p": 5}, "quaternion": {"d": 5, "t": 2}})"));
  auto j = to_json(ramification(*s.algebra, *s.valuation));
  EXPECT_EQ(j["status"], "Ramified");
  EXPECT_EQ(j["residue_class"], "2");
  EXPECT_TRUE(j["unit_presentation"].is_null());
}
