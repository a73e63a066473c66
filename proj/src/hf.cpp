#include "fraisse/hf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fraisse {

HFSet::HFSet(std::vector<HFSet> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

HFSet HFSet::numeral(int n) {
  if (n < 0) throw std::invalid_argument("numeral of a negative number");
  std::vector<HFSet> below;
  for (int i = 0; i < n; ++i) {
    std::vector<HFSet> copy = below;
    below.push_back(HFSet(std::move(copy)));
  }
  return HFSet(std::move(below));
}

HFSet HFSet::pair(const HFSet& a, const HFSet& b) {
  // explicit vector: a one-element braced list would pick the copy constructor
  HFSet first(std::vector<HFSet>{a});
  return HFSet({first, HFSet({a, b})});
}

HFSet HFSet::tuple(const std::vector<HFSet>& parts) {
  if (parts.empty()) return {};
  if (parts.size() == 1) return parts[0];
  return pair(parts[0], tuple({parts.begin() + 1, parts.end()}));
}

std::strong_ordering HFSet::operator<=>(const HFSet& other) const {
  return std::lexicographical_compare_three_way(members_.begin(), members_.end(),
                                                other.members_.begin(), other.members_.end());
}

bool HFSet::operator==(const HFSet& other) const { return (*this <=> other) == 0; }

std::string HFSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i].to_string();
  }
  os << '}';
  return os.str();
}

HFEncoding hf_encode(const Structure& b) {
  b.validate();
  if (!b.sig.one_sorted()) throw std::invalid_argument("hf_encode: structure must be one-sorted");
  HFEncoding out;
  out.source = b;

  std::vector<HFSet> rel_codes;
  for (const auto& rows : b.rels) {
    std::vector<HFSet> encoded_rows;
    for (const auto& t : rows) {
      std::vector<HFSet> parts;
      for (int v : t) parts.push_back(HFSet::numeral(v));
      encoded_rows.push_back(HFSet::tuple(parts));
    }
    rel_codes.push_back(HFSet(std::move(encoded_rows)));
  }

  const int n = b.sizes[0];
  out.components.resize(n);
  for (int x = 0; x < n; ++x) {
    out.components[x].push_back(HFSet::numeral(x));
    for (const auto& code : rel_codes) out.components[x].push_back(code);
    out.encoded.push_back(HFSet::tuple(out.components[x]));
  }
  return out;
}

bool hf_check(const HFEncoding& e, std::string* why) {
  auto explain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const Structure& b = e.source;
  const int n = b.sizes[0];
  if (static_cast<int>(e.components.size()) != n || static_cast<int>(e.encoded.size()) != n)
    return explain("element count mismatch");
  for (int x = 0; x < n; ++x)
    if (static_cast<int>(e.components[x].size()) != e.block_width())
      return explain("component width mismatch");
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (e.encoded[x] == e.encoded[y]) return explain("encoding is not injective");

  for (int rel = 0; rel < b.sig.relation_count(); ++rel) {
    const int ar = b.sig.relations[rel].arity;
    if (n == 0) break;
    Tuple t(ar, 0);
    while (true) {
      std::vector<HFSet> firsts;
      for (int v : t) firsts.push_back(e.components[v][0]);
      bool lhs = b.has(rel, t);
      bool rhs = e.components[t[0]][rel + 1].contains(HFSet::tuple(firsts));
      if (lhs != rhs) {
        std::ostringstream os;
        os << "membership biconditional fails for " << b.sig.relations[rel].name << " on (";
        for (int j = 0; j < ar; ++j) os << (j ? "," : "") << t[j];
        os << ')';
        return explain(os.str());
      }
      int j = ar - 1;
      while (j >= 0) {
        if (++t[j] < n) break;
        t[j--] = 0;
      }
      if (j < 0) break;
    }
  }
  return true;
}

}  // namespace fraisse
