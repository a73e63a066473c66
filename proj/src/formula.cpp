#include "fraisse/formula.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fraisse {

namespace {

int kind_rank(QFFormula::Kind k) {
  switch (k) {
    case QFFormula::Kind::Atom: return 0;
    case QFFormula::Kind::Eq: return 1;
    case QFFormula::Kind::Not: return 2;
    case QFFormula::Kind::And: return 3;
    case QFFormula::Kind::Or: return 4;
  }
  return 5;
}

}  // namespace

QFFormula QFFormula::atom(std::string rel, std::vector<Term> args) {
  QFFormula f;
  f.kind = Kind::Atom;
  f.rel = std::move(rel);
  f.args = std::move(args);
  for (const auto& t : f.args) {
    f.block_count = std::max(f.block_count, t.block + 1);
    f.block_width = std::max(f.block_width, t.coord + 1);
  }
  return f;
}

QFFormula QFFormula::equal(Term a, Term b) {
  QFFormula f;
  f.kind = Kind::Eq;
  if (b < a) std::swap(a, b);
  f.args = {a, b};
  for (const auto& t : f.args) {
    f.block_count = std::max(f.block_count, t.block + 1);
    f.block_width = std::max(f.block_width, t.coord + 1);
  }
  return f;
}

QFFormula QFFormula::negate(QFFormula f) {
  switch (f.kind) {
    case Kind::Not: {
      QFFormula inner = std::move(f.children.front());
      inner.block_count = std::max(inner.block_count, f.block_count);
      inner.block_width = std::max(inner.block_width, f.block_width);
      return inner;
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<QFFormula> flipped;
      flipped.reserve(f.children.size());
      for (auto& c : f.children) flipped.push_back(negate(std::move(c)));
      return f.kind == Kind::And ? disj(std::move(flipped)) : conj(std::move(flipped));
    }
    default: {
      QFFormula out;
      out.kind = Kind::Not;
      out.block_count = f.block_count;
      out.block_width = f.block_width;
      out.children.push_back(std::move(f));
      return out;
    }
  }
}

namespace {

QFFormula junction(QFFormula::Kind kind, std::vector<QFFormula> parts) {
  if (parts.empty()) throw std::invalid_argument("empty junction");
  std::vector<QFFormula> flat;
  for (auto& p : parts) {
    if (p.kind == kind) {
      for (auto& c : p.children) flat.push_back(std::move(c));
    } else {
      flat.push_back(std::move(p));
    }
  }
  std::sort(flat.begin(), flat.end(),
            [](const QFFormula& a, const QFFormula& b) { return a.order_against(b) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  int bc = 0, bw = 0;
  for (const auto& c : flat) {
    bc = std::max(bc, c.block_count);
    bw = std::max(bw, c.block_width);
  }
  QFFormula out;
  if (flat.size() == 1) {
    out = std::move(flat.front());
  } else {
    out.kind = kind;
    out.children = std::move(flat);
  }
  out.block_count = std::max(out.block_count, bc);
  out.block_width = std::max(out.block_width, bw);
  return out;
}

}  // namespace

QFFormula QFFormula::conj(std::vector<QFFormula> parts) {
  return junction(Kind::And, std::move(parts));
}

QFFormula QFFormula::disj(std::vector<QFFormula> parts) {
  return junction(Kind::Or, std::move(parts));
}

int QFFormula::node_count() const {
  switch (kind) {
    case Kind::Atom:
    case Kind::Eq:
      return 1;
    case Kind::Not:
      return 1 + children.front().node_count();
    default: {
      int n = 1;
      for (const auto& c : children) n += c.node_count();
      return n;
    }
  }
}

std::strong_ordering QFFormula::order_against(const QFFormula& other) const {
  if (auto c = kind_rank(kind) <=> kind_rank(other.kind); c != 0) return c;
  if (auto c = rel <=> other.rel; c != 0) return c;
  if (auto c = args <=> other.args; c != 0) return c;
  if (auto c = children.size() <=> other.children.size(); c != 0) return c;
  for (size_t i = 0; i < children.size(); ++i)
    if (auto c = children[i].order_against(other.children[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

QFFormula QFFormula::shifted(int coord_offset) const {
  QFFormula out = *this;
  out.block_width += coord_offset;
  for (auto& t : out.args) t.coord += coord_offset;
  std::vector<QFFormula> kids;
  kids.reserve(out.children.size());
  for (auto& c : out.children) {
    QFFormula k = c.shifted(coord_offset);
    kids.push_back(std::move(k));
  }
  out.children = std::move(kids);
  return out;
}

namespace {

int term_value(const Term& t, const Assignment& asg, const QFFormula& root) {
  if (t.block < 0 || t.block >= root.block_count || t.coord < 0 || t.coord >= root.block_width)
    throw std::invalid_argument("term out of declared block shape");
  return asg[t.block][t.coord];
}

bool eval_rec(const QFFormula& f, const Structure& s, const Assignment& asg,
              const QFFormula& root) {
  switch (f.kind) {
    case QFFormula::Kind::Atom: {
      int rel = s.sig.relation_index(f.rel);
      if (rel < 0) throw std::invalid_argument("unknown relation '" + f.rel + "'");
      if (static_cast<int>(f.args.size()) != s.sig.relations[rel].arity)
        throw std::invalid_argument("atom arity mismatch for '" + f.rel + "'");
      Tuple t(f.args.size());
      for (size_t j = 0; j < f.args.size(); ++j) t[j] = term_value(f.args[j], asg, root);
      return s.has(rel, t);
    }
    case QFFormula::Kind::Eq:
      return term_value(f.args[0], asg, root) == term_value(f.args[1], asg, root);
    case QFFormula::Kind::Not:
      return !eval_rec(f.children.front(), s, asg, root);
    case QFFormula::Kind::And:
      for (const auto& c : f.children)
        if (!eval_rec(c, s, asg, root)) return false;
      return true;
    case QFFormula::Kind::Or:
      for (const auto& c : f.children)
        if (eval_rec(c, s, asg, root)) return true;
      return false;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool evaluate(const QFFormula& f, const Structure& s, const Assignment& asg) {
  if (!s.sig.one_sorted())
    throw std::invalid_argument("formula evaluation requires a one-sorted structure");
  if (static_cast<int>(asg.size()) != f.block_count)
    throw std::invalid_argument("assignment block count mismatch");
  for (const auto& row : asg) {
    if (static_cast<int>(row.size()) != f.block_width)
      throw std::invalid_argument("assignment block width mismatch");
    for (int v : row)
      if (v < 0 || v >= s.sizes[0]) throw std::invalid_argument("assignment element out of range");
  }
  return eval_rec(f, s, asg, f);
}

// ---------------------------------------------------------------------------
// text form

namespace {

struct Token {
  enum Type { Name, TermTok, Punct, End } type = End;
  std::string text;
  Term term;
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;

  static bool name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
           c != '!' && c != '&' && c != '|' && c != '=';
  }

  Token next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos >= src.size()) return {};
    char c = src[pos];
    if (c == '(' || c == ')' || c == ',' || c == '!' || c == '&' || c == '|' || c == '=') {
      ++pos;
      return {Token::Punct, std::string(1, c), {}};
    }
    size_t start = pos;
    while (pos < src.size() && name_char(src[pos])) ++pos;
    std::string text(src.substr(start, pos - start));
    // x<digits>.<digits> is a term
    if (text.size() >= 4 && text[0] == 'x') {
      size_t dot = text.find('.');
      if (dot != std::string::npos && dot > 1) {
        bool digits = true;
        for (size_t i = 1; i < text.size(); ++i)
          if (i != dot && !std::isdigit(static_cast<unsigned char>(text[i]))) digits = false;
        if (digits && dot + 1 < text.size()) {
          Term t{std::stoi(text.substr(1, dot - 1)), std::stoi(text.substr(dot + 1))};
          return {Token::TermTok, text, t};
        }
      }
    }
    return {Token::Name, text, {}};
  }
};

struct Parser {
  Lexer lex;
  Token cur;
  const Signature& sig;

  Parser(std::string_view text, const Signature& s) : lex{text}, sig(s) { cur = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("formula: " + msg);
  }

  void expect_punct(const std::string& p) {
    if (cur.type != Token::Punct || cur.text != p) fail("expected '" + p + "'");
    cur = lex.next();
  }

  QFFormula parse_or() {
    std::vector<QFFormula> parts{parse_and()};
    while (cur.type == Token::Punct && cur.text == "|") {
      cur = lex.next();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? std::move(parts.front()) : QFFormula::disj(std::move(parts));
  }

  QFFormula parse_and() {
    std::vector<QFFormula> parts{parse_unary()};
    while (cur.type == Token::Punct && cur.text == "&") {
      cur = lex.next();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? std::move(parts.front()) : QFFormula::conj(std::move(parts));
  }

  QFFormula parse_unary() {
    if (cur.type == Token::Punct && cur.text == "!") {
      cur = lex.next();
      return QFFormula::negate(parse_unary());
    }
    if (cur.type == Token::Punct && cur.text == "(") {
      cur = lex.next();
      QFFormula f = parse_or();
      expect_punct(")");
      return f;
    }
    if (cur.type == Token::TermTok) {
      Term a = cur.term;
      cur = lex.next();
      expect_punct("=");
      if (cur.type != Token::TermTok) fail("expected term after '='");
      Term b = cur.term;
      cur = lex.next();
      return QFFormula::equal(a, b);
    }
    if (cur.type == Token::Name) {
      std::string rel = cur.text;
      int idx = sig.relation_index(rel);
      if (idx < 0) fail("unknown relation '" + rel + "'");
      cur = lex.next();
      expect_punct("(");
      std::vector<Term> args;
      while (true) {
        if (cur.type != Token::TermTok) fail("expected term in atom");
        args.push_back(cur.term);
        cur = lex.next();
        if (cur.type == Token::Punct && cur.text == ",") {
          cur = lex.next();
          continue;
        }
        break;
      }
      expect_punct(")");
      if (static_cast<int>(args.size()) != sig.relations[idx].arity)
        fail("atom arity mismatch for '" + rel + "'");
      return QFFormula::atom(std::move(rel), std::move(args));
    }
    fail("unexpected token");
  }
};

void format_rec(const QFFormula& f, std::ostringstream& os, int parent_rank) {
  auto term_str = [](const Term& t) {
    return "x" + std::to_string(t.block) + "." + std::to_string(t.coord);
  };
  switch (f.kind) {
    case QFFormula::Kind::Atom: {
      os << f.rel << '(';
      for (size_t i = 0; i < f.args.size(); ++i) {
        if (i) os << ", ";
        os << term_str(f.args[i]);
      }
      os << ')';
      return;
    }
    case QFFormula::Kind::Eq: {
      bool parens = parent_rank >= kind_rank(QFFormula::Kind::Not);
      if (parens) os << '(';
      os << term_str(f.args[0]) << " = " << term_str(f.args[1]);
      if (parens) os << ')';
      return;
    }
    case QFFormula::Kind::Not:
      os << '!';
      format_rec(f.children.front(), os, kind_rank(QFFormula::Kind::Not));
      return;
    case QFFormula::Kind::And:
    case QFFormula::Kind::Or: {
      bool parens = parent_rank > 0 && parent_rank <= kind_rank(f.kind);
      if (parens) os << '(';
      const char* sep = f.kind == QFFormula::Kind::And ? " & " : " | ";
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) os << sep;
        format_rec(f.children[i], os, kind_rank(f.kind));
      }
      if (parens) os << ')';
      return;
    }
  }
}

}  // namespace

std::string format_formula(const QFFormula& f) {
  std::ostringstream os;
  format_rec(f, os, 0);
  return os.str();
}

QFFormula parse_formula(std::string_view text, const Signature& sig, int block_count,
                        int block_width) {
  Parser p(text, sig);
  QFFormula f = p.parse_or();
  if (p.cur.type != Token::End) p.fail("trailing input");
  if (f.block_count > block_count || f.block_width > block_width)
    p.fail("terms exceed the declared block shape");
  f.block_count = block_count;
  f.block_width = block_width;
  return f;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct FormulaPool {
  // formulas grouped by node count, 1-based
  std::vector<std::vector<QFFormula>> by_size;
};

// combos of >= 2 distinct pool entries (strictly increasing global index)
// whose sizes sum to `budget`, children not of kind `kind`
bool emit_junctions(QFFormula::Kind kind, int budget, const FormulaPool& pool,
                    std::vector<QFFormula>& current, int current_sum, size_t min_index,
                    int block_count, int block_width,
                    const std::function<bool(const QFFormula&)>& visit,
                    std::vector<QFFormula>& sink) {
  // global index: (size-1) major, position minor
  size_t total = 0;
  std::vector<std::pair<int, size_t>> index;  // (size, pos) per global idx
  for (size_t s = 0; s < pool.by_size.size(); ++s)
    for (size_t i = 0; i < pool.by_size[s].size(); ++i) index.emplace_back(s + 1, i);
  total = index.size();
  for (size_t gi = min_index; gi < total; ++gi) {
    auto [sz, pos] = index[gi];
    const QFFormula& cand = pool.by_size[sz - 1][pos];
    if (cand.kind == kind) continue;
    if (current_sum + sz > budget) continue;
    current.push_back(cand);
    if (current.size() >= 2 && current_sum + sz == budget) {
      QFFormula f = kind == QFFormula::Kind::And ? QFFormula::conj(current)
                                                 : QFFormula::disj(current);
      f.block_count = block_count;
      f.block_width = block_width;
      sink.push_back(std::move(f));
      if (!visit(sink.back())) return false;
    }
    if (!emit_junctions(kind, budget, pool, current, current_sum + sz, gi + 1, block_count,
                        block_width, visit, sink))
      return false;
    current.pop_back();
  }
  return true;
}

}  // namespace

void enumerate_formulas(const Signature& sig, int block_count, int block_width, int max_nodes,
                        const std::function<bool(const QFFormula&)>& visit) {
  if (!sig.one_sorted())
    throw std::invalid_argument("formula enumeration requires a one-sorted signature");
  if (block_count < 1 || block_width < 1)
    throw std::invalid_argument("block shape must be positive");
  if (max_nodes < 1) throw std::invalid_argument("maxNodes must be >= 1");

  std::vector<Term> terms;
  for (int b = 0; b < block_count; ++b)
    for (int c = 0; c < block_width; ++c) terms.push_back({b, c});

  FormulaPool pool;
  pool.by_size.resize(max_nodes);

  auto stamp = [&](QFFormula f) {
    f.block_count = block_count;
    f.block_width = block_width;
    return f;
  };

  // size 1: relation atoms in signature order, then equalities
  for (const auto& r : sig.relations) {
    std::vector<int> odo(r.arity, 0);
    while (true) {
      std::vector<Term> args;
      args.reserve(r.arity);
      for (int j = 0; j < r.arity; ++j) args.push_back(terms[odo[j]]);
      pool.by_size[0].push_back(stamp(QFFormula::atom(r.name, std::move(args))));
      int j = r.arity - 1;
      while (j >= 0) {
        if (++odo[j] < static_cast<int>(terms.size())) break;
        odo[j--] = 0;
      }
      if (j < 0) break;
    }
  }
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j)
      pool.by_size[0].push_back(stamp(QFFormula::equal(terms[i], terms[j])));

  // size 2: negated literals
  if (max_nodes >= 2)
    for (const auto& a : pool.by_size[0])
      pool.by_size[1].push_back(stamp(QFFormula::negate(a)));

  for (const auto& f : pool.by_size[0])
    if (!visit(f)) return;
  if (max_nodes >= 2)
    for (const auto& f : pool.by_size[1])
      if (!visit(f)) return;

  // larger sizes: And, then Or, of distinct smaller formulas
  for (int size = 3; size <= max_nodes; ++size) {
    std::vector<QFFormula> emitted;
    for (auto kind : {QFFormula::Kind::And, QFFormula::Kind::Or}) {
      std::vector<QFFormula> current;
      if (!emit_junctions(kind, size - 1, pool, current, 0, 0, block_count, block_width, visit,
                          emitted))
        return;
    }
    for (auto& f : emitted) pool.by_size[size - 1].push_back(std::move(f));
  }
}

std::vector<QFFormula> enumerate_formulas(const Signature& sig, int block_count, int block_width,
                                          int max_nodes) {
  std::vector<QFFormula> out;
  enumerate_formulas(sig, block_count, block_width, max_nodes,
                     [&](const QFFormula& f) {
                       out.push_back(f);
                       return true;
                     });
  return out;
}

}  // namespace fraisse
