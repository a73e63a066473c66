#include <stdexcept>
#include <random>

#include "doctest.h"
#include "fraisse/catalog.hpp"
#include "fraisse/hf.hpp"
#include "fraisse/one_sort.hpp"
#include "fraisse/structure_io.hpp"
#include "test_util.hpp"

using namespace fraisse;

namespace {

Structure cross_pair() {
  Signature sig({"A", "B"}, {{"E", 2, {0, 1}}});
  Structure s(sig, {1, 1});
  s.add(0, {0, 0});
  return s;
}

Structure graph(int n, const std::vector<std::pair<int, int>>& edges) {
  Structure s(make_one_sorted("V", {{"R", 2}}), {n});
  for (auto [a, b] : edges) s.add_orbit(0, {a, b});
  return s;
}

}  // namespace

TEST_SUITE("one_sort") {

TEST_CASE("two sorts with one cross tuple") {
  Structure b = cross_pair();
  OneSortResult r = one_sort_forward(b);
  CHECK(r.derived.total_size() == 2);
  CHECK(r.derived.sig.one_sorted());
  OneSortBackResult back = one_sort_back(r.derived, r.original, r.types);
  CHECK(back.original == b);
}

TEST_CASE("empty structure round trips") {
  Signature sig({"A", "B"}, {{"E", 2, {0, 1}}});
  Structure b(sig, {0, 0});
  OneSortResult r = one_sort_forward(b);
  CHECK(r.derived.total_size() == 0);
  OneSortBackResult back = one_sort_back(r.derived, r.original, r.types);
  CHECK(back.original == b);
}

TEST_CASE("J[1] members round trip") {
  ClassSpec j1 = get_class("J[1]");
  for (const auto& m : members_up_to(j1, 4)) {
    OneSortResult r = one_sort_forward(m);
    OneSortBackResult back = one_sort_back(r.derived, r.original, r.types);
    CHECK(back.original == m);
  }
}

TEST_CASE("random structures round trip") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Signature sig = testutil::random_signature(rng);
    Structure b = testutil::random_structure(rng, sig, 3);
    OneSortResult r = one_sort_forward(b);
    CHECK(one_sort_back(r.derived, r.original, r.types).original == b);
    // text form round trips too
    OneSortResult r2 = parse_one_sort(serialize_one_sort(r));
    CHECK(r2.derived == r.derived);
    CHECK(r2.original == r.original);
    CHECK(r2.types == r.types);
  }
}

TEST_CASE("derived relations are unary types plus distinct tuples") {
  std::mt19937_64 rng(77);
  Structure b = testutil::random_structure(rng, Signature({"A", "B"}, {{"E", 2, {0, 1}}}), 3);
  OneSortResult r = one_sort_forward(b);
  int total = r.derived.total_size();
  // unary types partition the universe
  std::vector<int> covered(total, 0);
  for (size_t t = 0; t < r.types.size(); ++t)
    if (r.types[t].arity == 1)
      for (const auto& tup : r.derived.rels[t]) ++covered[tup[0]];
  for (int x = 0; x < total; ++x) CHECK(covered[x] == 1);
  // all tuples have pairwise distinct entries
  for (const auto& rel : r.derived.rels)
    for (const auto& tup : rel)
      for (size_t i = 0; i < tup.size(); ++i)
        for (size_t j = i + 1; j < tup.size(); ++j) CHECK(tup[i] != tup[j]);
}

TEST_CASE("back direction rejects broken partitions") {
  Structure b = cross_pair();
  OneSortResult r = one_sort_forward(b);
  Structure corrupt = r.derived;
  // erase a unary tuple: some element loses its sort tag
  for (size_t t = 0; t < r.types.size(); ++t)
    if (r.types[t].arity == 1 && !corrupt.rels[t].empty()) {
      corrupt.rels[t].erase(corrupt.rels[t].begin());
      break;
    }
  CHECK_THROWS_AS(one_sort_back(corrupt, r.original, r.types), std::invalid_argument);
}

TEST_CASE("type descriptor text round trip") {
  Structure b = cross_pair();
  OneSortResult r = one_sort_forward(b);
  for (const auto& t : r.types) {
    TypeDescriptor back = TypeDescriptor::from_text(t.to_text(r.original), r.original);
    CHECK(back == t);
  }
  CHECK_THROWS_AS(TypeDescriptor::from_text("garbage", b.sig), std::runtime_error);
}

}  // TEST_SUITE

TEST_SUITE("hf") {

TEST_CASE("numerals follow von Neumann") {
  CHECK(HFSet::numeral(0).is_empty());
  HFSet three = HFSet::numeral(3);
  CHECK(three.members().size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(three.contains(HFSet::numeral(i)));
  CHECK_FALSE(three.contains(three));
  CHECK(three.to_string() == "{{},{{}},{{},{{}}}}");
}

TEST_CASE("sets normalize to sorted unique members") {
  HFSet a = HFSet::numeral(1);
  HFSet b = HFSet::numeral(0);
  HFSet s({a, b, a});
  CHECK(s.members().size() == 2);
  CHECK(s == HFSet({b, a}));
  CHECK(s == HFSet::numeral(2));
}

TEST_CASE("Kuratowski pairs and tuples") {
  HFSet a = HFSet::numeral(0), b = HFSet::numeral(1);
  // one-element braced lists would pick the copy constructor
  auto set = [](std::vector<HFSet> v) { return HFSet(std::move(v)); };
  HFSet p = HFSet::pair(a, b);
  CHECK(p.members().size() == 2);
  CHECK(p.contains(set({a})));
  CHECK(p.contains(HFSet({a, b})));
  // pairs are ordered
  CHECK(HFSet::pair(a, b) != HFSet::pair(b, a));
  CHECK(HFSet::pair(a, a) == set({set({a})}));

  CHECK(HFSet::tuple({}).is_empty());
  CHECK(HFSet::tuple({a}) == a);
  CHECK(HFSet::tuple({a, b}) == HFSet::pair(a, b));
  CHECK(HFSet::tuple({a, b, a}) == HFSet::pair(a, HFSet::pair(b, a)));
  // tuples of distinct entries never collide on small cases
  std::vector<HFSet> nums;
  for (int i = 0; i < 3; ++i) nums.push_back(HFSet::numeral(i));
  std::set<std::string> seen;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(seen.insert(HFSet::tuple({nums[x], nums[y]}).to_string()).second);
}

TEST_CASE("ordering is a strict total order") {
  std::vector<HFSet> sets;
  for (int i = 0; i < 5; ++i) sets.push_back(HFSet::numeral(i));
  sets.push_back(HFSet::pair(sets[0], sets[1]));
  sets.push_back(HFSet({sets[2], sets[4]}));
  for (const auto& x : sets)
    for (const auto& y : sets) {
      bool lt = x < y, gt = y < x, eq = x == y;
      CHECK((lt + gt + eq) == 1);
    }
}

TEST_CASE("single edge encodes and checks") {
  Structure edge = graph(2, {{0, 1}});
  HFEncoding e = hf_encode(edge);
  CHECK(e.block_width() == 2);
  CHECK(hf_check(e));
  // the relation component holds exactly the two ordered edge tuples
  const HFSet& rel = e.components[0][1];
  CHECK(rel.members().size() == 2);
  CHECK(rel.contains(HFSet::tuple({HFSet::numeral(0), HFSet::numeral(1)})));
  CHECK(rel.contains(HFSet::tuple({HFSet::numeral(1), HFSet::numeral(0)})));
  // every element shares the same relation component
  CHECK(e.components[0][1] == e.components[1][1]);
}

TEST_CASE("edgeless and triangle encodings") {
  HFEncoding none = hf_encode(graph(3, {}));
  CHECK(hf_check(none));
  CHECK(none.components[0][1].is_empty());

  HFEncoding tri = hf_encode(graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(hf_check(tri));
  CHECK(tri.components[0][1].members().size() == 6);
}

TEST_CASE("encodings are injective and tamper-evident") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    Structure g = testutil::random_structure(rng, make_one_sorted("V", {{"R", 2}, {"Q", 1}}), 4);
    HFEncoding e = hf_encode(g);
    CHECK(hf_check(e));
    for (size_t i = 0; i < e.encoded.size(); ++i)
      for (size_t j = i + 1; j < e.encoded.size(); ++j) CHECK(e.encoded[i] != e.encoded[j]);
  }
  // corrupt a numeral component
  Structure edge = graph(2, {{0, 1}});
  HFEncoding e = hf_encode(edge);
  e.components[0][0] = HFSet::numeral(1);
  std::string why;
  CHECK_FALSE(hf_check(e, &why));
  CHECK(!why.empty());
}

TEST_CASE("multi-sorted input is rejected") {
  Signature sig({"A", "B"}, {{"E", 2, {0, 1}}});
  CHECK_THROWS_AS(hf_encode(Structure(sig, {1, 1})), std::invalid_argument);
}

}  // TEST_SUITE
