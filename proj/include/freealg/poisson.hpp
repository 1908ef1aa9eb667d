#pragma once

// Two-operation Poisson elements: associative polynomials over the alphabet
// of Lyndon-basis letters of the free Lie algebra, with the bracket extended
// from the Lie bracket by the Leibniz identity.  Monomials are kept in the
// canonical sorted-letter form; only the commutative product is compatible
// with an antisymmetric Leibniz bracket (expanding {ab,cd} in both orders
// forces {a,c}(db-bd) = (ca-ac){b,d}, which fails for free words).

#include <memory>
#include <random>

#include "freealg/elements.hpp"

namespace freealg {

class PoissonCtx {
 public:
  PoissonCtx(int n, const Field& f);

  int generators() const { return n_; }
  const Field& field() const { return field_; }

  // global letter index of a Lyndon word; the table extends on demand
  long letterId(const std::vector<int>& lyndonWord);
  const std::vector<int>& letterWord(long id) const;
  int letterDegree(long id) const { return (int)letterWord(id).size(); }

  // {letter a, letter b} as a Lie element re-expressed over letter ids
  const std::map<long, Scalar>& letterBracket(long a, long b);

 private:
  void extendTo(int degree);

  int n_;
  Field field_;
  int tabledDegree_ = 0;
  std::vector<std::vector<int>> words_;
  std::map<std::vector<int>, long> ids_;
  std::map<std::pair<long, long>, std::map<long, Scalar>> brackets_;
};

using Poisson = std::shared_ptr<PoissonCtx>;
Poisson makePoissonCtx(int n, const Field& f);

struct PoissonElement {
  Poisson ctx;
  std::map<std::vector<long>, Scalar> terms;  // words over letter ids

  bool isZero() const { return terms.empty(); }
  int totalDegree() const;  // sum of letter Lie degrees, max over terms
  void addTerm(const std::vector<long>& word, const Scalar& c);

  PoissonElement operator+(const PoissonElement& o) const;
  PoissonElement operator-(const PoissonElement& o) const;
  PoissonElement operator-() const;
  PoissonElement scaled(const Scalar& c) const;
  bool operator==(const PoissonElement& o) const;

  std::string str() const;
};

PoissonElement poissonZero(const Poisson& ctx);
PoissonElement poissonLetter(const Poisson& ctx, long id);
// embed a Lie element (Lyndon coordinates) as a linear form in letters
PoissonElement fromLie(const Poisson& ctx, const FreeElement& lie);

PoissonElement poissonMultiply(const PoissonElement& a, const PoissonElement& b);
PoissonElement poissonBracket(const PoissonElement& a, const PoissonElement& b);

// antisymmetry, Jacobi, and both-sided Leibniz on seeded random elements
IdentityReport poissonIdentityCheck(int n, const Field& f, int trials, uint64_t seed = 1);

PoissonElement randomPoissonElement(const Poisson& ctx, int maxDegree,
                                    std::mt19937_64& rng, int maxTerms = 3);

}  // namespace freealg
