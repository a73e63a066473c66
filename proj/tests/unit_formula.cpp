#include <stdexcept>
#include <random>

#include "doctest.h"
#include "fraisse/formula.hpp"
#include "fraisse/structure.hpp"
#include "test_util.hpp"

using namespace fraisse;

namespace {

Signature graph_sig() { return make_one_sorted("V", {{"R", 2}}); }

Structure triangle() {
  Structure s(graph_sig(), {3});
  s.add_orbit(0, {0, 1});
  s.add_orbit(0, {0, 2});
  s.add_orbit(0, {1, 2});
  return s;
}

// half-graph on 2n vertices: a_i = i, b_j = n + j, edge a_i b_j iff i < j
Structure half_graph(int n) {
  Structure s(graph_sig(), {2 * n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i < j) s.add_orbit(0, {i, n + j});
  return s;
}

}  // namespace

TEST_SUITE("formula") {

TEST_CASE("format and parse round trip") {
  Signature sig = graph_sig();
  auto roundtrip = [&](const std::string& text, int blocks, int width) {
    QFFormula f = parse_formula(text, sig, blocks, width);
    CHECK(format_formula(f) == text);
    CHECK(f == parse_formula(format_formula(f), sig, blocks, width));
  };
  roundtrip("R(x0.1, x1.0)", 2, 2);
  roundtrip("!R(x0.0, x0.0)", 1, 1);
  roundtrip("x0.0 = x1.0", 2, 1);
  // equality atoms are parenthesized inside connectives
  roundtrip("R(x0.0, x1.0) & (x0.0 = x1.1)", 2, 2);
  CHECK(parse_formula("R(x0.0, x1.0) & x0.0 = x1.1", sig, 2, 2) ==
        parse_formula("R(x0.0, x1.0) & (x0.0 = x1.1)", sig, 2, 2));
}

TEST_CASE("precedence: not over and over or") {
  Signature sig = graph_sig();
  QFFormula f = parse_formula("!R(x0.0, x1.0) & R(x1.0, x0.0) | x0.0 = x1.0", sig, 2, 1);
  CHECK(f.kind == QFFormula::Kind::Or);
  QFFormula g = parse_formula("R(x0.0, x1.0) & (R(x1.0, x0.0) | x0.0 = x1.0)", sig, 2, 1);
  CHECK(g.kind == QFFormula::Kind::And);
}

TEST_CASE("normal form flattens, sorts and dedups") {
  Term a{0, 0}, b{1, 0};
  QFFormula ra = QFFormula::atom("R", {a, b});
  QFFormula rb = QFFormula::atom("R", {b, a});
  QFFormula f = QFFormula::conj({rb, QFFormula::conj({ra, rb}), ra});
  CHECK(f.children.size() == 2);
  CHECK(f == QFFormula::conj({ra, rb}));

  CHECK(QFFormula::negate(QFFormula::negate(ra)) == ra);
  // equality operands are ordered
  CHECK(QFFormula::equal(b, a) == QFFormula::equal(a, b));
  // single-child junctions collapse
  CHECK(QFFormula::conj({ra}) == ra);
}

TEST_CASE("node counts") {
  Term a{0, 0}, b{1, 0};
  QFFormula ra = QFFormula::atom("R", {a, b});
  CHECK(ra.node_count() == 1);
  CHECK(QFFormula::negate(ra).node_count() == 2);
  CHECK(QFFormula::conj({ra, QFFormula::equal(a, b)}).node_count() == 3);
}

TEST_CASE("evaluate on the triangle") {
  Structure tri = triangle();
  QFFormula f = parse_formula("R(x0.0, x1.0)", tri.sig, 2, 1);
  CHECK(evaluate(f, tri, {{0}, {1}}));
  CHECK_FALSE(evaluate(f, tri, {{0}, {0}}));

  QFFormula never = QFFormula::negate(QFFormula::equal(Term{0, 0}, Term{0, 0}));
  CHECK_FALSE(evaluate(never, tri, {{2}}));
}

TEST_CASE("half-graph block evaluation") {
  Structure h = half_graph(2);  // vertices a0 a1 b0 b1 = 0 1 2 3, edge a0 b1
  QFFormula f = parse_formula("R(x0.0, x1.1)", h.sig, 2, 2);
  CHECK(evaluate(f, h, {{0, 2}, {1, 3}}));
  CHECK_FALSE(evaluate(f, h, {{1, 3}, {0, 2}}));
}

TEST_CASE("evaluate validates shapes") {
  Structure tri = triangle();
  QFFormula f = parse_formula("R(x0.0, x1.0)", tri.sig, 2, 1);
  CHECK_THROWS_AS(evaluate(f, tri, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(f, tri, {{0}, {9}}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(QFFormula::atom("Q", {Term{0, 0}, Term{1, 0}}), tri, {{0}, {1}}),
                  std::invalid_argument);
}

TEST_CASE("enumeration counts match the closed form") {
  Signature sig = graph_sig();
  // one binary symbol, blockCount=2, m=1: (2*1)^2 = 4 atoms plus 1 equality
  auto fs = enumerate_formulas(sig, 2, 1, 1);
  CHECK(fs.size() == 5);
  int atoms = 0;
  for (const auto& f : fs) atoms += f.kind == QFFormula::Kind::Atom;
  CHECK(atoms == 4);

  // (b*m)^r atoms for one r-ary symbol
  Signature tern = make_one_sorted("V", {{"S", 3}});
  auto gs = enumerate_formulas(tern, 2, 2, 1);
  int tern_atoms = 0;
  for (const auto& f : gs) tern_atoms += f.kind == QFFormula::Kind::Atom;
  CHECK(tern_atoms == 4 * 4 * 4);
}

TEST_CASE("enumeration is deduplicated, ordered and within budget") {
  Signature sig = graph_sig();
  auto fs = enumerate_formulas(sig, 2, 1, 3);
  for (size_t i = 0; i < fs.size(); ++i) {
    CHECK(fs[i].node_count() <= 3);
    CHECK(fs[i].block_count == 2);
    CHECK(fs[i].block_width == 1);
    for (size_t j = i + 1; j < fs.size(); ++j) CHECK(fs[i] != fs[j]);
  }
  for (size_t i = 0; i + 1 < fs.size(); ++i)
    CHECK(fs[i].node_count() <= fs[i + 1].node_count());
  CHECK_THROWS_AS(enumerate_formulas(sig, 2, 1, 0), std::invalid_argument);
}

TEST_CASE("boolean laws on random formulas and assignments") {
  std::mt19937_64 rng(23);
  Structure tri = triangle();
  auto fs = enumerate_formulas(tri.sig, 2, 2, 2);
  std::uniform_int_distribution<size_t> pick(0, fs.size() - 1);
  std::uniform_int_distribution<int> elt(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const QFFormula& f = fs[pick(rng)];
    const QFFormula& g = fs[pick(rng)];
    Assignment asg = {{elt(rng), elt(rng)}, {elt(rng), elt(rng)}};
    bool vf = evaluate(f, tri, asg), vg = evaluate(g, tri, asg);
    CHECK(evaluate(QFFormula::negate(f), tri, asg) == !vf);
    CHECK(evaluate(QFFormula::conj({f, g}), tri, asg) == (vf && vg));
    CHECK(evaluate(QFFormula::disj({f, g}), tri, asg) == (vf || vg));
  }
}

TEST_CASE("shifted remaps coordinates") {
  Signature sig = graph_sig();
  QFFormula f = parse_formula("R(x0.0, x1.0)", sig, 2, 1);
  QFFormula s = f.shifted(1);
  CHECK(s.args[0].coord == 1);
  CHECK(s.args[1].coord == 1);
}

TEST_CASE("parse errors") {
  Signature sig = graph_sig();
  CHECK_THROWS_AS(parse_formula("Q(x0.0, x1.0)", sig, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula("R(x0.0)", sig, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula("R(x0.0, x5.0)", sig, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula("R(x0.0, x1.7)", sig, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula("R(x0.0, x1.0) &", sig, 2, 1), std::invalid_argument);
}

}  // TEST_SUITE
