#include "freealg/words.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace freealg {

MagmaWord MagmaWord::leaf(int generator) {
  if (generator < 1) throw WordError("generator index must be >= 1");
  MagmaWord w;
  w.node_ = std::make_shared<Node>(Node{generator, nullptr, nullptr, 1});
  return w;
}

MagmaWord MagmaWord::pair(const MagmaWord& left, const MagmaWord& right) {
  if (!left.valid() || !right.valid()) throw WordError("invalid child word");
  MagmaWord w;
  w.node_ = std::make_shared<Node>(
      Node{0, left.node_, right.node_, left.degree() + right.degree()});
  return w;
}

MagmaWord MagmaWord::left() const {
  MagmaWord w;
  w.node_ = node_->l;
  return w;
}

MagmaWord MagmaWord::right() const {
  MagmaWord w;
  w.node_ = node_->r;
  return w;
}

int MagmaWord::maxGenerator() const {
  if (isLeaf()) return generator();
  return std::max(left().maxGenerator(), right().maxGenerator());
}

std::vector<int> MagmaWord::leaves() const {
  std::vector<int> out;
  out.reserve((size_t)degree());
  std::vector<const Node*> stack = {node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->gen > 0) {
      out.push_back(n->gen);
    } else {
      stack.push_back(n->r.get());
      stack.push_back(n->l.get());
    }
  }
  return out;
}

std::vector<int32_t> MagmaWord::encode() const {
  std::vector<int32_t> out;
  std::vector<const Node*> stack = {node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->gen > 0) {
      out.push_back((int32_t)n->gen);
    } else {
      out.push_back(0);
      stack.push_back(n->r.get());
      stack.push_back(n->l.get());
    }
  }
  return out;
}

MagmaWord MagmaWord::decode(const std::vector<int32_t>& code) {
  size_t pos = 0;
  std::function<MagmaWord()> rec = [&]() -> MagmaWord {
    if (pos >= code.size()) throw WordError("truncated word code");
    int32_t c = code[pos++];
    if (c > 0) return MagmaWord::leaf((int)c);
    MagmaWord l = rec();
    MagmaWord r = rec();
    return MagmaWord::pair(l, r);
  };
  MagmaWord w = rec();
  if (pos != code.size()) throw WordError("trailing data in word code");
  return w;
}

std::string MagmaWord::sexpr() const {
  if (isLeaf()) return "(g " + std::to_string(generator()) + ")";
  return "(* " + left().sexpr() + " " + right().sexpr() + ")";
}

bool MagmaWord::operator==(const MagmaWord& o) const {
  if (node_ == o.node_) return true;
  return compareWords(*this, o) == Cmp::Equal;
}

Cmp compareWords(const MagmaWord& a, const MagmaWord& b) {
  if (a.degree() != b.degree())
    return a.degree() < b.degree() ? Cmp::Less : Cmp::Greater;
  if (a.isLeaf()) {
    if (a.generator() != b.generator())
      return a.generator() < b.generator() ? Cmp::Less : Cmp::Greater;
    return Cmp::Equal;
  }
  Cmp l = compareWords(a.left(), b.left());
  if (l != Cmp::Equal) return l;
  return compareWords(a.right(), b.right());
}

std::vector<MagmaWord> enumerateWords(int n, int degree) {
  if (n < 1 || degree < 1) throw WordError("need n >= 1 and degree >= 1");
  static std::map<std::pair<int, int>, std::vector<MagmaWord>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, degree});
    if (it != cache.end()) return it->second;
  }
  std::vector<MagmaWord> out;
  if (degree == 1) {
    for (int g = 1; g <= n; ++g) out.push_back(MagmaWord::leaf(g));
  } else {
    for (int dl = 1; dl < degree; ++dl) {
      auto ls = enumerateWords(n, dl);
      auto rs = enumerateWords(n, degree - dl);
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(MagmaWord::pair(l, r));
    }
    std::sort(out.begin(), out.end(), [](const MagmaWord& a, const MagmaWord& b) {
      return compareWords(a, b) == Cmp::Less;
    });
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, ok] = cache.emplace(std::make_pair(n, degree), out);
  return it->second;
}

bool isRegularWord(const MagmaWord& w, bool anticommutative) {
  if (w.isLeaf()) return true;
  if (!isRegularWord(w.left(), anticommutative) ||
      !isRegularWord(w.right(), anticommutative))
    return false;
  Cmp c = compareWords(w.left(), w.right());
  if (anticommutative) return c == Cmp::Greater;
  return c != Cmp::Less;
}

std::vector<MagmaWord> regularWords(int n, int degree, bool anticommutative) {
  std::vector<MagmaWord> out;
  for (const auto& w : enumerateWords(n, degree))
    if (isRegularWord(w, anticommutative)) out.push_back(w);
  return out;  // already sorted by the shared order
}

bool isLyndonWord(const std::vector<int>& w) {
  // strictly smallest among its proper suffixes (equivalent to strict
  // rotation minimality)
  if (w.empty()) return false;
  if (w.size() == 1) return true;
  for (size_t i = 1; i < w.size(); ++i) {
    if (std::lexicographical_compare(w.begin() + (long)i, w.end(), w.begin(), w.end()) ||
        std::equal(w.begin() + (long)i, w.end(), w.begin()))
      return false;
  }
  return true;
}

MagmaWord standardBracketing(const std::vector<int>& w) {
  if (w.empty()) throw WordError("empty word");
  if (w.size() == 1) return MagmaWord::leaf(w[0]);
  if (!isLyndonWord(w)) throw WordError("not a Lyndon word");
  // standard factorization: the right factor is the longest proper Lyndon
  // suffix
  for (size_t i = 1; i < w.size(); ++i) {
    std::vector<int> suf(w.begin() + (long)i, w.end());
    if (isLyndonWord(suf)) {
      std::vector<int> pre(w.begin(), w.begin() + (long)i);
      return MagmaWord::pair(standardBracketing(pre), standardBracketing(suf));
    }
  }
  throw WordError("no Lyndon suffix found");  // unreachable for Lyndon input
}

std::vector<LyndonBracketing> lyndonBasis(int n, int degree) {
  if (n < 1 || degree < 1) throw WordError("need n >= 1 and degree >= 1");
  // Duval's generation of Lyndon words of exact length `degree`
  std::vector<std::vector<int>> words;
  std::vector<int> w = {1};
  while (!w.empty()) {
    if ((int)w.size() == degree) words.push_back(w);
    size_t k = w.size();
    while (w.size() < (size_t)degree) w.push_back(w[w.size() - k]);
    while (!w.empty() && w.back() == n) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  std::sort(words.begin(), words.end());
  std::vector<LyndonBracketing> out;
  out.reserve(words.size());
  for (auto& lw : words) out.push_back({lw, standardBracketing(lw)});
  return out;
}

}  // namespace freealg
