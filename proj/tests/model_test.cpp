// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "datr/model.hpp"
#include "datr/oracle.hpp"
#include "fixtures.hpp"

namespace datr {
namespace {

using test::path;

DefSentence walk_root(const char* value) {
  return {NodeSym{"Walk"}, path({"mor", "root"}), {Descriptor::make_atom(AtomSym{value})}};
}

TEST(Theory, AddSentence) {
  Theory t = theory_add_sentence(Theory{}, walk_root("walk"));
  EXPECT_EQ(t.sentence_count(), 1u);
  EXPECT_EQ(t.node_count(), 1u);
}

TEST(Theory, IdenticalSentenceIsIdempotent) {
  Theory t;
  t.add(walk_root("walk"));
  t.add(walk_root("walk"));
  EXPECT_EQ(t.sentence_count(), 1u);
}

TEST(Theory, ConflictingSentenceThrowsWithBothSides) {
  Theory t;
  t.add(walk_root("walk"));
  try {
    t.add(walk_root("run"));
    FAIL() << "expected DuplicateError";
  } catch (const DuplicateError& e) {
    EXPECT_EQ(e.node().name, "Walk");
    EXPECT_EQ(e.path(), path({"mor", "root"}));
    EXPECT_EQ(e.existing(), walk_root("walk").rhs);
    EXPECT_EQ(e.conflicting(), walk_root("run").rhs);
  }
  EXPECT_EQ(t.sentence_count(), 1u);
}

TEST(Theory, NodeOrderIsFirstMention) {
  Theory t;
  t.add({NodeSym{"Zed"}, Path{}, {}});
  t.add({NodeSym{"Alpha"}, Path{}, {}});
  t.add({NodeSym{"Zed"}, path({"x"}), {}});
  ASSERT_EQ(t.node_order().size(), 2u);
  EXPECT_EQ(t.node_order()[0].name, "Zed");
  EXPECT_EQ(t.node_order()[1].name, "Alpha");
}

TEST(NodeDefinition, VerbFragmentNodes) {
  Theory t = test::verbs();
  NodeDef walk = node_definition(t, NodeSym{"Walk"});
  ASSERT_EQ(walk.entries.size(), 2u);
  EXPECT_TRUE(walk.entries.count(Path{}));
  EXPECT_TRUE(walk.entries.count(path({"mor", "root"})));
  EXPECT_EQ(node_definition(t, NodeSym{"Verb"}).entries.size(), 7u);
  NodeDef foo = node_definition(t, NodeSym{"Foo"});
  EXPECT_TRUE(foo.empty());
  EXPECT_EQ(foo.owner.name, "Foo");
}

TEST(NodeDefinition, ReinsertingEntriesRoundTrips) {
  Theory t = test::verbs();
  for (const auto& n : t.node_order()) {
    NodeDef def = node_definition(t, n);
    Theory rebuilt;
    for (const auto& [p, rhs] : def.entries) rebuilt.add({n, p, rhs});
    EXPECT_EQ(node_definition(rebuilt, n).entries, def.entries);
  }
}

TEST(LongestPrefix, WalkExamples) {
  NodeDef walk = node_definition(test::verbs(), NodeSym{"Walk"});
  auto m = longest_prefix_lookup(walk, path({"mor", "root", "root"}));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->explicit_path, path({"mor", "root"}));
  EXPECT_EQ(*m->rhs, Rhs{Descriptor::make_atom(AtomSym{"walk"})});
  EXPECT_EQ(m->suffix, path({"root"}));

  auto exact = longest_prefix_lookup(walk, path({"mor", "root"}));
  ASSERT_TRUE(exact);
  EXPECT_TRUE(exact->suffix.empty());

  auto fallback = longest_prefix_lookup(walk, path({"mor", "past"}));
  ASSERT_TRUE(fallback);
  EXPECT_EQ(fallback->explicit_path, Path{});
  EXPECT_EQ(fallback->suffix, path({"mor", "past"}));
}

TEST(LongestPrefix, VerbHasNoPrefixForSynForm) {
  NodeDef verb = node_definition(test::verbs(), NodeSym{"Verb"});
  EXPECT_FALSE(longest_prefix_lookup(verb, path({"syn", "form"})));
  EXPECT_FALSE(longest_prefix_lookup(verb, Path{}));
}

// Brute force: try every key, keep the longest that is a prefix.
TEST(LongestPrefix, AgreesWithExhaustiveScanOnRandomDefinitions) {
  std::mt19937_64 rng(7);
  const std::vector<AtomSym> alphabet{{"a"}, {"b"}, {"c"}};
  const auto queries = enumerate_paths(alphabet, 4);
  for (int trial = 0; trial < 200; ++trial) {
    NodeDef def{NodeSym{"N"}, {}};
    for (int k = static_cast<int>(rng() % 6); k > 0; --k) {
      Path p;
      for (auto len = rng() % 4; len > 0; --len) p.atoms.push_back(alphabet[rng() % 3]);
      def.entries[p] = {Descriptor::make_atom(AtomSym{"v" + std::to_string(p.size())})};
    }
    for (const auto& q : queries) {
      const Path* best = nullptr;
      for (const auto& [key, _] : def.entries)
        if (key.is_prefix_of(q) && (!best || key.size() > best->size())) best = &key;
      auto m = longest_prefix_lookup(def, q);
      ASSERT_EQ(static_cast<bool>(m), best != nullptr);
      if (!m) continue;
      EXPECT_EQ(m->explicit_path, *best);
      EXPECT_EQ(m->explicit_path + m->suffix, q);
      EXPECT_EQ(m->rhs, &def.entries.at(*best));
    }
  }
}

TEST(TheoryAtoms, CollectsLhsAndNestedRhsAtoms) {
  auto atoms = theory_atoms(test::verbs());
  EXPECT_EQ(atoms.size(), 22u);
  EXPECT_TRUE(std::binary_search(atoms.begin(), atoms.end(), AtomSym{"form"}));
  EXPECT_TRUE(std::binary_search(atoms.begin(), atoms.end(), AtomSym{"could"}));
}

}  // namespace
}  // namespace datr
