#pragma once

// Nonassociative (magma) words, the length-then-left-then-right total order,
// Shirshov regular words, and the Lyndon word basis data for free Lie
// algebras.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace freealg {

struct WordError : std::runtime_error {
  explicit WordError(const std::string& what) : std::runtime_error(what) {}
};

// immutable full binary tree with 1-based generator indices at the leaves
class MagmaWord {
 public:
  MagmaWord() = default;
  static MagmaWord leaf(int generator);
  static MagmaWord pair(const MagmaWord& left, const MagmaWord& right);

  bool valid() const { return node_ != nullptr; }
  bool isLeaf() const { return node_->gen > 0; }
  int generator() const { return node_->gen; }
  MagmaWord left() const;
  MagmaWord right() const;
  int degree() const { return node_->degree; }
  int maxGenerator() const;

  std::vector<int> leaves() const;          // associative image
  std::vector<int32_t> encode() const;      // preorder, 0 marks a pair node
  static MagmaWord decode(const std::vector<int32_t>& code);
  std::string sexpr() const;                // (g i) / (* L R)

  bool operator==(const MagmaWord& o) const;

 private:
  struct Node {
    int gen;  // > 0 leaf, 0 pair
    std::shared_ptr<const Node> l, r;
    int degree;
  };
  std::shared_ptr<const Node> node_;
};

enum class WordOrderFlavor { Plain, RegularCommutative, RegularAnticommutative };
enum class Cmp { Less, Equal, Greater };

// words of smaller length precede words of greater length; equal-length
// non-leaves compare by (left, right); leaves by generator index.  The
// comparison rule is shared by every flavor; the flavor selects the
// regularity predicate.
Cmp compareWords(const MagmaWord& a, const MagmaWord& b);

// all magma words of the degree, sorted; |result| = Catalan(degree-1)*n^degree
std::vector<MagmaWord> enumerateWords(int nGenerators, int degree);

// w = uv is regular iff u, v regular and u >= v (commutative) / u > v
// (anticommutative)
bool isRegularWord(const MagmaWord& w, bool anticommutative);
std::vector<MagmaWord> regularWords(int nGenerators, int degree, bool anticommutative);

struct LyndonBracketing {
  std::vector<int> word;    // Lyndon associative word
  MagmaWord bracketing;     // standard bracketing; leaf sequence equals word
};

bool isLyndonWord(const std::vector<int>& w);
MagmaWord standardBracketing(const std::vector<int>& lyndon);
std::vector<LyndonBracketing> lyndonBasis(int nGenerators, int degree);

}  // namespace freealg
