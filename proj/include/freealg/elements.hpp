#pragma once

// Arithmetic in the free algebra of each supported variety: canonical bases
// per degree, normal forms, products, evaluation of magma words, and the
// Jordan circle product.

#include <random>

#include "freealg/field.hpp"
#include "freealg/words.hpp"

namespace freealg {

enum class Variety {
  All,
  Associative,
  Commutative,
  Anticommutative,
  Lie,
  SpecialJordan,
  Poisson,
  TrivialMult,
};

std::string varietyName(Variety v);
Variety parseVariety(const std::string& name);

struct ElementError : std::runtime_error {
  explicit ElementError(const std::string& what) : std::runtime_error(what) {}
};

// canonical basis monomial key.  Tree varieties (All, Commutative,
// Anticommutative) store the preorder tree code; Associative and
// SpecialJordan store the letter sequence; Lie stores the Lyndon word.
struct MonoKey {
  std::vector<int32_t> code;

  int degree() const;
  bool operator<(const MonoKey& o) const;
  bool operator==(const MonoKey& o) const { return code == o.code; }
  std::string sexpr(Variety tag) const;  // display form
};

MonoKey treeKey(const MagmaWord& w);
MonoKey wordKey(const std::vector<int>& letters);

class FreeElement {
 public:
  Variety tag = Variety::All;
  int nGenerators = 0;
  Field field;
  std::map<MonoKey, Scalar> terms;  // no explicit zeros

  bool isZero() const { return terms.empty(); }
  int degree() const;  // 0 for the zero element
  void addTerm(const MonoKey& k, const Scalar& c);

  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement operator-() const;
  FreeElement scaled(const Scalar& c) const;
  bool operator==(const FreeElement& o) const;

  std::string str() const;  // element text format
};

FreeElement zeroElement(Variety v, int n, const Field& f);
FreeElement generatorElement(Variety v, int n, const Field& f, int index);
// the empty associative word; only meaningful for Associative/SpecialJordan
// representations (unit adjunction, off by default everywhere else)
FreeElement unitElement(Variety v, int n, const Field& f);

// the image of a magma word under the quotient map onto the canonical basis
FreeElement normalForm(const MagmaWord& w, Variety v, int n, const Field& f);

// variety product, bilinear over the canonical bases
FreeElement multiply(const FreeElement& a, const FreeElement& b);

// circle product on associative representations: (pq + qp)/2
FreeElement jordanCirc(const FreeElement& p, const FreeElement& q);

// substitute assignment[i-1] for generator i and multiply recursively
FreeElement evaluateMonomial(const MagmaWord& m, const std::vector<FreeElement>& assignment);

struct BasisMonomial {
  Variety tag;
  int degree;
  MagmaWord preimage;    // normal_form(preimage) == payload
  FreeElement payload;   // single monomial except for SpecialJordan
};

// canonical basis of the degree-d homogeneous component
const std::vector<BasisMonomial>& varietyBasis(Variety v, int n, int degree, const Field& f);

struct IdentityReport {
  bool passed = true;
  std::string violation;  // human-readable description of the first failure
};

// evaluates every defining identity of v on all substitutions from the
// sample plus `trials` seeded random elements
IdentityReport identityCheck(Variety v, const std::vector<FreeElement>& sample,
                             int trials, uint64_t seed = 1);

// small random element: up to `maxTerms` basis monomials of degree <= maxDegree
// with coefficients a + b*t (t = first field variable, if any)
FreeElement randomElement(Variety v, int n, const Field& f, int maxDegree,
                          std::mt19937_64& rng, int maxTerms = 3);

// conversions behind the Lie representation; exposed for the Poisson layer
FreeElement lieToAssoc(const FreeElement& e);   // commutator expansion
FreeElement assocToLie(const FreeElement& e);   // triangular Lyndon extraction

}  // namespace freealg
