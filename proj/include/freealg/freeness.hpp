#pragma once

// Freeness certification up to a degree bound, the parametric dependence
// matrices and their minors, the integer-box specialization search, and the
// MLM verdict procedure (with the layered Poisson reduction).

#include "freealg/elements.hpp"
#include "freealg/poisson.hpp"

namespace freealg {

struct ResourceCapError : std::runtime_error {
  explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

struct WitnessTerm {
  Scalar coef;        // over the full field, or the base subfield per scope
  MagmaWord monomial;  // basis-monomial preimage evaluated at the elements
};

struct FreenessReport {
  Variety variety = Variety::All;
  int n = 0;       // number of tested elements
  int degree = 0;  // bound d
  Scope scope = Scope::FullField;
  std::vector<size_t> dims;  // basis monomial counts t_1..t_d
  bool free = true;
  std::vector<WitnessTerm> witness;  // empty when free
  uint64_t seed = 0;
  long trials = 0;
};

// evaluates every variety basis preimage of degree <= d at the elements and
// decides linear independence over the chosen scope
FreenessReport freenessTest(const std::vector<FreeElement>& elements, Variety v,
                            int d, Scope scope, size_t monomialCap = 20000);

// substitutes the witness back; exactly zero for every dependent report
FreeElement witnessValue(const FreenessReport& rep,
                         const std::vector<FreeElement>& elements);

// ---------------------------------------------------------------------------
// parametric machinery

struct GeneratorFrame {
  Variety hostTag = Variety::All;
  int hostN = 0;  // generators of the host free algebra
  Field field;
  std::vector<std::vector<FreeElement>> lists;  // a_{i,1..r_i} per i

  size_t params() const;                      // r_1 + ... + r_n
  std::string paramName(size_t flat) const;   // z<i><j>
  std::pair<size_t, size_t> paramSplit(size_t flat) const;  // (i, j), 0-based
};

void validateFrame(const GeneratorFrame& frame);

// commutative polynomial in the frame parameters z with Scalar coefficients
struct ZPoly {
  size_t r = 0;
  Field field;
  std::map<Exponents, Scalar, GrlexLess> terms;  // no zero coefficients

  bool isZero() const { return terms.empty(); }
};

ZPoly zpZero(const Field& f, size_t r);
ZPoly zpConst(const Field& f, size_t r, const Scalar& c);
ZPoly zpVar(const Field& f, size_t r, size_t idx);
ZPoly zpAdd(const ZPoly& a, const ZPoly& b);
ZPoly zpMul(const ZPoly& a, const ZPoly& b);
ZPoly zpScale(const ZPoly& a, const Scalar& c);
Scalar zpEval(const ZPoly& a, const std::vector<Scalar>& point);
std::string zpString(const ZPoly& a, const GeneratorFrame& frame);

struct PolyMatrix {
  GeneratorFrame frame;
  std::vector<MagmaWord> monomials;          // rows f_1..f_m
  std::vector<FreeElement> eBasis;           // e_1..e_s
  std::vector<std::vector<ZPoly>> entries;   // m x s, p_kt
  bool wholeSpaceDependent = false;          // m > s
};

PolyMatrix parametricMatrix(const GeneratorFrame& frame,
                            const std::vector<MagmaWord>& monomials, int d);

// all m x m minors over lexicographic row/column subsets; in search mode the
// list stops at the first nonzero minor
std::vector<ZPoly> minors(const PolyMatrix& P, size_t m,
                          bool firstNonzeroOnly = false);

// specialize the frame at an integer point: a_i = sum_j z_ij a_ij
std::vector<FreeElement> specializeFrame(const GeneratorFrame& frame,
                                         const std::vector<long>& z);

struct SearchResult {
  bool found = false;
  std::vector<long> point;
  long trials = 0;
  FreenessReport certificate;  // full-field report at the found point
};

SearchResult specializationSearch(const GeneratorFrame& frame, Variety v, int p,
                                  long budget, uint64_t seed,
                                  size_t monomialCap = 20000);

// ---------------------------------------------------------------------------
// MLM verdicts

struct MlmReport {
  Variety variety = Variety::All;
  int degree = 0;
  FreenessReport base, full;
  bool layered = false;           // Poisson: second (associative) layer ran
  FreenessReport base2, full2;
  bool counterexample = false;
  std::string verdict;            // mlm-consistent | mlm-counterexample
};

// base-free implies full-free check; Poisson instances are given as Lie
// elements and go through the layered reduction (Lie bracket-freeness, then
// associative freeness of the Lyndon letters)
MlmReport mlmCheck(Variety v, const std::vector<FreeElement>& instance, int d,
                   size_t monomialCap = 20000);

}  // namespace freealg
