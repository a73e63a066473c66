#include <stdexcept>
#include <random>

#include "doctest.h"
#include "fraisse/catalog.hpp"
#include "fraisse/interpretation.hpp"
#include "fraisse/structure_io.hpp"
#include "test_util.hpp"

using namespace fraisse;

namespace {

Signature graph_sig() { return make_one_sorted("V", {{"R", 2}}); }
Signature order_sig() { return make_one_sorted("V", {{"<", 2}}); }

Structure chain(int n) {
  Structure s(order_sig(), {n});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.add(0, {i, j});
  return s;
}

// half-graph on 2n vertices encoding an n-chain: edge (i, n+j) iff i < j
Structure half_graph(int n) {
  Structure s(graph_sig(), {2 * n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i < j) s.add_orbit(0, {i, n + j});
  return s;
}

Interpretation identity_interp() {
  Interpretation i;
  i.from = i.to = graph_sig();
  i.m = 1;
  i.thetas = {parse_formula("R(x0.0, x1.0)", graph_sig(), 2, 1)};
  return i;
}

Interpretation half_graph_interp() {
  Interpretation i;
  i.from = order_sig();
  i.to = graph_sig();
  i.m = 2;
  i.thetas = {parse_formula("R(x0.0, x1.1)", graph_sig(), 2, 2)};
  return i;
}

}  // namespace

TEST_SUITE("interpretation") {

TEST_CASE("identity interpretation verifies on random graphs") {
  std::mt19937_64 rng(5);
  Interpretation id = identity_interp();
  for (int trial = 0; trial < 30; ++trial) {
    Structure g = testutil::random_structure(rng, graph_sig(), 5);
    BlockMap u;
    for (int v = 0; v < g.sizes[0]; ++v) u.push_back({v});
    CHECK(verify_witness(id, g, g, u));
  }
}

TEST_CASE("half-graph interpretation encodes the 4-chain") {
  Interpretation hg = half_graph_interp();
  Structure b = chain(4);
  Structure c = half_graph(4);
  BlockMap u;
  for (int i = 0; i < 4; ++i) u.push_back({i, 4 + i});
  CHECK(verify_witness(hg, b, c, u));

  // swapping two chain elements breaks the order
  std::swap(u[1], u[2]);
  std::string why;
  CHECK_FALSE(verify_witness(hg, b, c, u, &why));
  CHECK(!why.empty());
}

TEST_CASE("witness checking rejects malformed maps") {
  Interpretation hg = half_graph_interp();
  Structure b = chain(2);
  Structure c = half_graph(2);
  std::string why;
  // wrong width
  CHECK_FALSE(verify_witness(hg, b, c, {{0}, {1}}, &why));
  // out of range
  CHECK_FALSE(verify_witness(hg, b, c, {{0, 2}, {1, 9}}, &why));
  // not injective
  CHECK_FALSE(verify_witness(hg, b, c, {{0, 2}, {0, 2}}, &why));
  // wrong number of rows
  CHECK_FALSE(verify_witness(hg, b, c, {{0, 2}}, &why));
}

TEST_CASE("interpretation validation") {
  Interpretation i = identity_interp();
  CHECK_NOTHROW(i.validate());
  i.m = 0;
  CHECK_THROWS_AS(i.validate(), std::invalid_argument);
  i = identity_interp();
  i.thetas.clear();
  CHECK_THROWS_AS(i.validate(), std::invalid_argument);
  i = identity_interp();
  i.thetas[0] = parse_formula("R(x0.0, x1.0)", graph_sig(), 2, 2);
  CHECK_THROWS_AS(i.validate(), std::invalid_argument);
}

TEST_CASE("interpretation file round trip") {
  Interpretation hg = half_graph_interp();
  std::string text = serialize_interpretation(hg);
  Interpretation back = parse_interpretation(text);
  CHECK(back.m == 2);
  CHECK(back.from == hg.from);
  CHECK(back.to == hg.to);
  CHECK(back.thetas == hg.thetas);
  CHECK_THROWS_AS(parse_interpretation("not an interp"), std::runtime_error);
  CHECK_THROWS_AS(parse_interpretation("interp m=1 from=V:R/2(V,V) to=V:R/2(V,V)\n"),
                  std::runtime_error);
}

TEST_CASE("encoding file round trip") {
  Structure c = half_graph(3);
  BlockMap u = {{0, 3}, {1, 4}, {2, 5}};
  auto [c2, u2] = parse_encoding(serialize_encoding(c, u));
  CHECK(c2 == c);
  CHECK(u2 == u);
  CHECK_THROWS_WITH_AS(parse_encoding(serialize_structure(c) + "map: 0 - (0,3)\n"),
                       doctest::Contains("expected '->'"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_encoding(serialize_structure(c) + "map: 4 -> (0,3)\n"),
                       doctest::Contains("cover 0..n-1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_encoding(serialize_structure(c) + "map: 0 -> (0,9)\n"),
                       doctest::Contains("out of range"), std::runtime_error);
}

TEST_CASE("search finds the identity interpretation") {
  InterpSearchResult r =
      search_interpretation(get_class("H[2]"), get_class("H[2]"), 1, 1, 3);
  REQUIRE(r.status == InterpSearchResult::Status::Found);
  REQUIRE(r.interp.has_value());
  CHECK(format_formula(r.interp->thetas[0]) == "R(x0.0, x1.0)");
  // one witness per member of size 1..3: 1 + 2 + 4
  CHECK(r.witnesses.size() == 7);
  for (const auto& w : r.witnesses)
    CHECK(verify_witness(r.interp.value(), w.source, w.target, w.map));
}

TEST_CASE("search finds an order coding into graphs") {
  InterpSearchResult r =
      search_interpretation(get_class("LO"), get_class("H[2]"), 2, 2, 3);
  REQUIRE(r.status == InterpSearchResult::Status::Found);
  for (const auto& w : r.witnesses) {
    CHECK(is_member(get_class("H[2]"), w.target));
    CHECK(verify_witness(r.interp.value(), w.source, w.target, w.map));
  }
}

TEST_CASE("search reports absence within bounds") {
  // equality alone cannot express a strict order
  InterpSearchResult r =
      search_interpretation(get_class("LO"), get_class("pure_sets"), 1, 1, 2);
  CHECK(r.status == InterpSearchResult::Status::Absent);
  CHECK(r.verify_calls > 0);
}

TEST_CASE("search distinguishes budget exhaustion from absence") {
  InterpSearchResult r =
      search_interpretation(get_class("H[3]"), get_class("H[2]"), 2, 2, 3, 50);
  CHECK(r.status == InterpSearchResult::Status::BudgetExceeded);
}

}  // TEST_SUITE
