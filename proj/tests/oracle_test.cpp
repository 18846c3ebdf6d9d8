// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "datr/oracle.hpp"
#include "datr/render.hpp"
#include "fixtures.hpp"

namespace datr {
namespace {

using test::path;

ClosureParams params_for(const Theory& t, int depth) { return ClosureParams{depth, default_alphabet(t), 1'000}; }

bool has_line(const std::string& text, const std::string& line) {
  return text.find(line + "\n") != std::string::npos;
}

TEST(Closure, DepthZeroIsExplicitTheory) {
  Theory t = test::verbs();
  EXPECT_EQ(closure_sentences(t, params_for(t, 0)), t);
}

TEST(Closure, VerbFragmentImplicitSentences) {
  Theory t = test::verbs();
  const std::string d1 = render_theory(closure_sentences(t, params_for(t, 1)));
  const std::string d2 = render_theory(closure_sentences(t, params_for(t, 2)));
  EXPECT_TRUE(has_line(d1, "Walk: <mor> == Verb:<mor> ."));
  EXPECT_TRUE(has_line(d2, "Walk: <mor form> == Verb:<mor form> ."));
  EXPECT_TRUE(has_line(d2, "Walk: <syn cat> == Verb:<syn cat> ."));
  EXPECT_FALSE(has_line(d1, "Walk: <mor form> == Verb:<mor form> ."));
  for (const auto* text : {&d1, &d2}) {
    EXPECT_FALSE(has_line(*text, "Walk: <mor root> == Verb:<mor root> ."));
    EXPECT_FALSE(has_line(*text, "Can: <mor past> == Modal:<mor past> ."));
    EXPECT_FALSE(has_line(*text, "Aux: <syn type> == Verb:<syn type> ."));
    EXPECT_EQ(text->find("Walk: <mor root _pad> == Verb"), std::string::npos);
  }
  EXPECT_TRUE(has_line(d1, "Walk: <mor root root> == walk ."));
  EXPECT_TRUE(has_line(d1, "Verb: <mor past _pad> == \"<mor root _pad>\" ed ."));
}

TEST(Closure, MonotoneInDepth) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Theory t = random_theory(seed, 1 + static_cast<int>(seed % 6), 3, true);
    for (int k = 0; k < 2; ++k) {
      Theory small = closure_sentences(t, params_for(t, k));
      Theory large = closure_sentences(t, params_for(t, k + 1));
      for (const auto& s : small.sentences()) {
        const NodeDef* def = large.find(s.node);
        ASSERT_TRUE(def);
        auto it = def->entries.find(s.lhs);
        ASSERT_NE(it, def->entries.end()) << render_sentence(s);
        EXPECT_EQ(it->second, s.rhs);
      }
    }
  }
}

// Pointwise membership must reproduce the enumerated closure exactly, and each
// implicit sentence must originate from the longest explicit prefix.
TEST(Closure, PointwiseMembershipMatchesEnumeration) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Theory t = random_theory(seed, 1 + static_cast<int>(seed % 6), 3, true);
    const auto params = params_for(t, 2);
    Theory closure = closure_sentences(t, params);
    for (const auto& n : t.node_order()) {
      const NodeDef& def = *t.find(n);
      for (const auto& p : enumerate_paths(params.alphabet, 4)) {
        auto s = implicit_sentence(t, n, p);
        auto m = longest_prefix_lookup(def, p);
        ASSERT_EQ(static_cast<bool>(s), static_cast<bool>(m));
        if (!s) continue;
        EXPECT_EQ(s->rhs, extend_rhs(*m->rhs, m->suffix));
        if (m->suffix.size() <= 2) {
          const NodeDef* cdef = closure.find(n);
          ASSERT_TRUE(cdef);
          auto it = cdef->entries.find(p);
          ASSERT_NE(it, cdef->entries.end()) << render_node_path(n, p);
          EXPECT_EQ(it->second, s->rhs);
        }
      }
    }
  }
}

TEST(OracleEvaluate, VerbFragment) {
  Theory t = test::verbs();
  auto params = params_for(t, 4);
  EXPECT_EQ(oracle_evaluate(t, NodeSym{"Walk"}, path({"syn", "cat"}), params), EvalOutcome(Value{test::value({"verb"})}));
  EXPECT_EQ(oracle_evaluate(t, NodeSym{"Can"}, path({"mor", "pres", "sing", "three"}), params),
            EvalOutcome(Value{test::value({"can"})}));
  EXPECT_EQ(oracle_evaluate(t, NodeSym{"Mow"}, path({"mor", "past", "part"}), params),
            EvalOutcome(Value{test::value({"mow", "en"})}));
  EXPECT_EQ(oracle_evaluate(t, NodeSym{"Walk"}, path({"mor", "form"}), params),
            EvalOutcome(Undefined{Undefined::Reason::NoPrefix, NodeSym{"Verb"}, path({"syn", "form"})}));
}

TEST(OracleEvaluate, CycleHitsBudget) {
  Theory t = test::parse_or_throw("L: <> == L:<> .");
  EXPECT_TRUE(is_limit(oracle_evaluate(t, NodeSym{"L"}, Path{}, params_for(t, 0))));
  EXPECT_TRUE(is_limit(delta_evaluate(t, NodeSym{"L"}, Path{}, 1'000)));
}

TEST(DeltaEvaluate, AgreesWithClosureOracle) {
  std::int64_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Theory t = random_theory(seed, 1 + static_cast<int>(seed % 6), 3, true);
    const auto params = params_for(t, 2);
    for (const auto& n : t.node_order()) {
      for (const auto& p : enumerate_paths(params.alphabet, 2)) {
        EvalOutcome closure = oracle_evaluate(t, n, p, params);
        EvalOutcome delta = delta_evaluate(t, n, p, params.step_budget);
        if (is_limit(closure) || is_limit(delta)) continue;
        ++compared;
        ASSERT_EQ(closure, delta) << "seed " << seed << " " << render_node_path(n, p);
      }
    }
  }
  EXPECT_GT(compared, 1000);
}

TEST(CrossCheck, VerbFragmentAgrees) {
  Theory t = test::verbs();
  CrossCheckReport r = cross_check(t, params_for(t, 2));
  EXPECT_TRUE(r.agrees()) << format_report(r);
  EXPECT_EQ(r.queries_checked, 7 * (1 + 23 + 23 * 23));
  EXPECT_EQ(r.skipped, 0);
}

TEST(CrossCheck, EmptyTheory) {
  CrossCheckReport r = cross_check(Theory{}, ClosureParams{2, {AtomSym{"_pad"}}, 100});
  EXPECT_TRUE(r.agrees());
  EXPECT_EQ(r.queries_checked, 0);
  EXPECT_EQ(format_report(r), "queries=0 skipped=0 mismatches=0\n");
}

TEST(CrossCheck, DetectsStrictModeMutant) {
  Theory t = test::verbs();
  QueryFn strict = [](const Theory& th, const NodeSym& n, const Path& p, std::int64_t budget) {
    return evaluate_query(th, n, p, EvalConfig{EvalMode::Strict, budget, false}).outcome;
  };
  CrossCheckReport r = cross_check(t, params_for(t, 2), strict);
  EXPECT_FALSE(r.agrees());
  const std::string text = format_report(r);
  EXPECT_NE(text.find("Walk\t<mor past>\tUNDEFINED (no-prefix at Walk:<mor past>)\twalk ed\n"), std::string::npos);
}

TEST(CrossCheck, DetectsOutputTamperingMutant) {
  QueryFn truncating = [](const Theory& th, const NodeSym& n, const Path& p, std::int64_t budget) {
    EvalOutcome o = default_query(th, n, p, budget);
    if (auto* v = std::get_if<Value>(&o); v && v->atoms.size() > 1) v->atoms.atoms.pop_back();
    return o;
  };
  Theory t = test::verbs();
  EXPECT_FALSE(cross_check(t, params_for(t, 2), truncating).agrees());
}

TEST(CrossCheck, MismatchesSortedByNodeThenPath) {
  Theory t = test::verbs();
  QueryFn always_x = [](const Theory&, const NodeSym&, const Path&, std::int64_t) -> EvalOutcome {
    return Value{test::value({"x"})};
  };
  CrossCheckReport r = cross_check(t, params_for(t, 1), always_x);
  ASSERT_FALSE(r.mismatches.empty());
  for (std::size_t i = 1; i < r.mismatches.size(); ++i) {
    const auto& a = r.mismatches[i - 1];
    const auto& b = r.mismatches[i];
    EXPECT_TRUE(std::tie(a.node, a.path) < std::tie(b.node, b.path));
  }
}

TEST(RandomTheory, Shape) {
  Theory one = random_theory(1, 1, 1, false);
  EXPECT_EQ(one.node_count(), 1u);
  EXPECT_EQ(one.sentence_count(), 1u);
  EXPECT_EQ(random_theory(42, 5, 3, true), random_theory(42, 5, 3, true));
  EXPECT_EQ(render_theory(random_theory(42, 5, 3, true)), render_theory(random_theory(42, 5, 3, true)));
  Theory g = random_theory(42, 5, 3, true);
  EXPECT_EQ(test::parse_or_throw(render_theory(g)), g);
}

TEST(RandomTheory, GlobalsFlagControlsQuotedForms) {
  auto count_global = [](const Theory& t) {
    int n = 0;
    auto visit = [&](auto&& self, const Descriptor& d) -> void {
      n += d.kind != Descriptor::Kind::Atom && d.kind != Descriptor::Kind::LocalNodePath;
      for (const auto& s : d.path) self(self, s);
    };
    for (const auto& s : t.sentences())
      for (const auto& d : s.rhs) visit(visit, d);
    return n;
  };
  int with = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    EXPECT_EQ(count_global(random_theory(seed, 4, 3, false)), 0);
    with += count_global(random_theory(seed, 4, 3, true));
  }
  EXPECT_GT(with, 0);
}

}  // namespace
}  // namespace datr
