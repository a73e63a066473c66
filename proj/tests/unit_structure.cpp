#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"
#include "fraisse/canonical.hpp"
#include "fraisse/embedding.hpp"
#include "fraisse/structure.hpp"
#include "fraisse/structure_io.hpp"
#include "test_util.hpp"

using namespace fraisse;
using testutil::iso_oracle;

namespace {

Signature graph_sig() { return make_one_sorted("V", {{"R", 2}}); }

Structure graph(int n, const std::vector<std::pair<int, int>>& edges) {
  Structure s(graph_sig(), {n});
  for (auto [a, b] : edges) s.add_orbit(0, {a, b});
  return s;
}

Structure path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return graph(n, e);
}

Structure cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return graph(n, e);
}

Structure complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return graph(n, e);
}

}  // namespace

TEST_SUITE("structure") {

TEST_CASE("text round trip") {
  Structure s = path(4);
  Structure back = parse_structure(serialize_structure(s));
  CHECK(back == s);

  Signature two(
      {"V", "W"},
      {{"E", 2, {0, 0}}, {"P", 1, {1}}, {"X", 2, {0, 1}}});
  Structure t(two, {3, 2});
  t.add(0, {0, 1});
  t.add(1, {1});
  t.add(2, {2, 0});
  CHECK(parse_structure(serialize_structure(t)) == t);
}

TEST_CASE("parser accepts comments, repeats and omitted relations") {
  Structure s = parse_structure(
      "# a comment\n"
      "sorts: V=3\n"
      "rels: R/2:V,V\n"
      "R: (0,1)\n"
      "\n"
      "R: (1,0)\n");
  CHECK(s.rels[0] == std::set<Tuple>{{0, 1}, {1, 0}});

  Structure empty_rel = parse_structure("sorts: V=2\nrels: R/2:V,V\n");
  CHECK(empty_rel.rels[0].empty());
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_structure("rels: R/2:V,V\n"),
                       doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_structure("sorts: V=2\nrels: R/2:V,V\nQ: (0,1)\n"),
                       doctest::Contains("line 3"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_structure("sorts: V=2\nrels: R/2:V,V\nR: (0,5)\n"),
                       doctest::Contains("line 3"), std::runtime_error);
}

TEST_CASE("validate rejects out-of-range tuples") {
  Structure s(graph_sig(), {2});
  CHECK_THROWS_AS(s.add(0, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(s.add(0, {0}), std::invalid_argument);
  s.add(0, {0, 1});
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("add_orbit closes under symmetry") {
  Structure s(make_one_sorted("V", {{"R", 3}}), {4});
  s.add_orbit(0, {0, 1, 2});
  CHECK(s.rels[0].size() == 6);
  CHECK(s.has(0, {2, 0, 1}));
  CHECK_FALSE(s.has(0, {0, 1, 3}));
}

TEST_CASE("induced substructure") {
  // restricting a triangle to two vertices leaves one edge
  Structure tri = complete(3);
  Structure edge = induced_substructure(tri, {{0, 2}});
  CHECK(edge.sizes == std::vector<int>{2});
  CHECK(edge.rels[0] == std::set<Tuple>{{0, 1}, {1, 0}});

  // full universe is the identity
  CHECK(induced_substructure(tri, {{0, 1, 2}}) == tri);

  // a 3-edge dies when the subset is smaller than its arity
  Structure h(make_one_sorted("V", {{"R", 3}}), {3});
  h.add_orbit(0, {0, 1, 2});
  CHECK(induced_substructure(h, {{0, 1}}).rels[0].empty());
}

TEST_CASE("reduct and permutation and disjoint union") {
  Signature two = make_one_sorted("V", {{"R", 2}, {"S", 1}});
  Structure s(two, {3});
  s.add(0, {0, 1});
  s.add(1, {2});
  Structure r = reduct(s, graph_sig());
  CHECK(r.sig.relation_count() == 1);
  CHECK(r.rels[0] == std::set<Tuple>{{0, 1}});

  Structure p = apply_permutation(s, {{2, 0, 1}});
  CHECK(p.has(0, {2, 0}));
  CHECK(p.has(1, {1}));

  Structure u = disjoint_union(path(2), path(2));
  CHECK(u.total_size() == 4);
  CHECK(u.rels[0] == std::set<Tuple>{{0, 1}, {1, 0}, {2, 3}, {3, 2}});
}

TEST_CASE("embedding counts on small graphs") {
  Structure vertex = graph(1, {});
  Structure edge = complete(2);
  Structure tri = complete(3);
  CHECK(enumerate_embeddings(vertex, tri).size() == 3);
  CHECK(enumerate_embeddings(edge, tri).size() == 6);
  CHECK(enumerate_embeddings(tri, graph(3, {})).empty());
}

TEST_CASE("embeddings reflect as well as preserve") {
  // an induced path does not embed into a triangle
  CHECK_FALSE(embeds(path(3), complete(3)));
  CHECK(embeds(path(3), cycle(5)));

  Embedding bad{{{0, 1, 2}}};
  CHECK_FALSE(check_embedding(path(3), complete(3), bad));
  CHECK(check_embedding(path(3), path(3), identity_embedding(path(3))));
}

TEST_CASE("compose and pinned extension") {
  Structure edge = complete(2);
  Structure tri = complete(3);
  auto embs = enumerate_embeddings(edge, tri);
  REQUIRE(!embs.empty());
  Embedding id = identity_embedding(edge);
  CHECK(compose(id, embs[0]) == embs[0]);

  auto pinned = find_embedding_extending(edge, tri, {{1, -1}});
  REQUIRE(pinned.has_value());
  CHECK(pinned->image(0, 0) == 1);
  CHECK(check_embedding(edge, tri, *pinned));
}

TEST_CASE("induced_with_inclusion agrees with induced_substructure") {
  Structure tri = complete(3);
  auto [sub, inc] = induced_with_inclusion(tri, {{0, 2}});
  CHECK(sub == induced_substructure(tri, {{0, 2}}));
  CHECK(check_embedding(sub, tri, inc));
}

TEST_CASE("canonical codes are relabeling invariants") {
  Structure p = path(4);
  Structure q = apply_permutation(p, {{3, 1, 0, 2}});
  CHECK(canonical_form(p) == canonical_form(q));
  CHECK(canonical_form(path(3)) != canonical_form(complete(3)));
}

TEST_CASE("64 labeled graphs on 4 vertices give 11 codes") {
  std::set<CanonicalCode> codes;
  for (const auto& g : testutil::all_labeled(graph_sig(), {4})) {
    bool sym = true;
    for (const auto& t : g.rels[0]) sym = sym && t[0] != t[1] && g.has(0, {t[1], t[0]});
    if (sym) codes.insert(canonical_form(g));
  }
  CHECK(codes.size() == 11);
}

TEST_CASE("5-cycle is isomorphic to its complement") {
  Structure c5 = cycle(5);
  Structure comp(graph_sig(), {5});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j && !c5.has(0, {i, j})) comp.add(0, {i, j});
  CHECK(are_isomorphic(c5, comp));
  CHECK(iso_oracle(c5, comp));
}

TEST_CASE("trivial isomorphism cases") {
  Structure e0(graph_sig(), {0});
  CHECK(are_isomorphic(e0, e0));
  CHECK_FALSE(are_isomorphic(complete(2), graph(2, {})));
}

TEST_CASE("canonical labeling realizes the canonical form") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Signature sig = testutil::random_signature(rng);
    Structure s = testutil::random_structure(rng, sig, 3);
    Structure canon = apply_permutation(s, canonical_labeling(s));
    CHECK(canonical_form(canon) == canonical_form(s));
    Structure r = testutil::random_relabel(rng, s);
    CHECK(canonical_form(r) == canonical_form(s));
    CHECK(are_isomorphic(r, s));
  }
}

TEST_CASE("are_isomorphic agrees with the permutation oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    Signature sig = testutil::random_signature(rng);
    Structure a = testutil::random_structure(rng, sig, 3);
    Structure b = testutil::random_structure(rng, sig, 3);
    CHECK(are_isomorphic(a, b) == iso_oracle(a, b));
  }
}

TEST_CASE("signature literal round trip") {
  Signature two({"V", "W"}, {{"E", 2, {0, 1}}, {"P", 1, {1}}});
  CHECK(Signature::from_literal(two.to_literal()) == two);
  CHECK(two.to_literal() == "V,W:E/2(V,W),P/1(W)");
  CHECK_THROWS_AS(Signature::from_literal("no-colon"), std::invalid_argument);
}

}  // TEST_SUITE
