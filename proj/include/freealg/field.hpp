#pragma once

// Exact arithmetic in field towers K_0(t_1,...,t_m) where K_0 is Q or GF(p),
// p an odd prime, plus the exact linear algebra (rank, kernel, echelon
// reduction) every independence test is built on.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace freealg {

struct FieldError : std::runtime_error {
  explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

struct FieldSpec {
  int characteristic = 0;          // 0 or an odd prime
  std::vector<std::string> vars;   // transcendental generators, ordered
};

class FieldCtx {
 public:
  explicit FieldCtx(FieldSpec spec);

  int characteristic() const { return spec_.characteristic; }
  size_t nvars() const { return spec_.vars.size(); }
  const std::vector<std::string>& vars() const { return spec_.vars; }
  size_t varIndex(const std::string& name) const;  // throws if unknown
  const FieldSpec& spec() const { return spec_; }

  // coefficient arithmetic in the prime field
  mpq_class cnorm(const mpq_class& x) const;
  mpq_class cinv(const mpq_class& x) const;

 private:
  FieldSpec spec_;
};

using Field = std::shared_ptr<const FieldCtx>;

Field makeField(FieldSpec spec);
Field parseFieldSpec(const std::string& text);  // Q, GF(p), Q(t1,t2), GF(p)(t)
std::string fieldSpecString(const Field& f);
bool sameField(const Field& a, const Field& b);

// ---------------------------------------------------------------------------
// sparse multivariate polynomials over the prime field

using Exponents = std::vector<unsigned>;

struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

struct Poly {
  std::map<Exponents, mpq_class, GrlexLess> terms;  // no zero coefficients
  bool zero() const { return terms.empty(); }
  bool constant() const;
};

Poly polyZero();
Poly polyConst(const FieldCtx& f, const mpq_class& c);
Poly polyVar(const FieldCtx& f, size_t v);
Poly polyAdd(const FieldCtx& f, const Poly& a, const Poly& b);
Poly polySub(const FieldCtx& f, const Poly& a, const Poly& b);
Poly polyNeg(const FieldCtx& f, const Poly& a);
Poly polyMul(const FieldCtx& f, const Poly& a, const Poly& b);
Poly polyMonic(const FieldCtx& f, const Poly& a);
Poly polyGcd(const FieldCtx& f, const Poly& a, const Poly& b);
Poly polyDivExact(const FieldCtx& f, const Poly& a, const Poly& b);
Poly polyLcm(const FieldCtx& f, const Poly& a, const Poly& b);
int polyDegIn(const Poly& a, size_t v);
std::string polyString(const FieldCtx& f, const Poly& a);

// ---------------------------------------------------------------------------
// Scalar: reduced fraction of polynomials, denominator monic under grlex.
// Canonical forms are unique, so equality is syntactic.

class Scalar {
 public:
  Scalar() = default;
  static Scalar make(Field f, Poly num, Poly den);  // reduces
  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar fromInt(const Field& f, long v);
  static Scalar fromMpq(const Field& f, const mpq_class& v);
  static Scalar variable(const Field& f, const std::string& name);

  const Field& field() const { return field_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool isZero() const { return num_.zero(); }
  bool isOne() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on zero divisor
  Scalar operator-() const;
  Scalar inv() const;                       // throws on zero
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;    // deterministic total order

  std::string str() const;

 private:
  Field field_;
  Poly num_, den_;
};

// lift into a larger field whose variable list contains this one's
Scalar liftScalar(const Scalar& s, const Field& bigger);
// substitute rational values for the variables absent from `target`
Scalar specializeScalar(const Scalar& s, const Field& target,
                        const std::map<std::string, mpq_class>& values);

// recursive-descent parser for scalar literals: + - * / ^ ( ), integers,
// declared variable names
Scalar parseScalar(const Field& f, const std::string& text);

// ---------------------------------------------------------------------------
// matrices and linear algebra

struct ScalarMatrix {
  size_t rows = 0, cols = 0;
  Field field;
  std::vector<Scalar> data;  // row-major

  static ScalarMatrix make(const Field& f, size_t r, size_t c);
  Scalar& at(size_t i, size_t j) { return data[i * cols + j]; }
  const Scalar& at(size_t i, size_t j) const { return data[i * cols + j]; }
};

struct RankKernel {
  size_t rank = 0;
  std::vector<std::vector<Scalar>> kernel;  // basis of the right null space
};

// fraction-free elimination after row-wise denominator clearing
RankKernel rankAndKernel(const ScalarMatrix& m);

Scalar determinant(const Field& f, const std::vector<Scalar>& entries, size_t n);

// ---------------------------------------------------------------------------
// incremental dependence detection: feed sparse rows, get the first vanishing
// combination back.  Scope selects the coefficient field of the combination.

enum class Scope { FullField, BaseSubfield };
Scope parseScope(const std::string& s);
std::string scopeName(Scope s);

using SparseRow = std::map<long, Scalar>;

class DependenceReducer {
 public:
  explicit DependenceReducer(Field f) : field_(std::move(f)) {}

  // returns the coefficients of a vanishing combination of all rows added so
  // far (index -> coefficient) the first time a row reduces to zero
  std::optional<std::map<size_t, Scalar>> addRow(SparseRow row);
  size_t rank() const { return rows_.size(); }
  size_t added() const { return added_; }

 private:
  struct EchRow {
    SparseRow entries;             // pivot entry normalized to 1
    std::map<size_t, Scalar> aug;
  };
  Field field_;
  std::vector<EchRow> rows_;       // ordered by pivot column
  size_t added_ = 0;
};

// K_0-linear independence of vectors with entries in the extended field:
// bring everything over one common denominator, expand entries into monomial
// coordinates over the base, and reduce there.
struct BaseIndependence {
  bool independent = true;
  std::vector<Scalar> witness;  // base-field coefficients, empty if independent
};
BaseIndependence baseIndependence(const Field& f,
                                  const std::vector<std::vector<Scalar>>& vectors);

// shared engine behind both scopes: rows over f, dependence coefficients over
// f (FullField) or over the prime field (BaseSubfield)
std::optional<std::map<size_t, Scalar>> scopedDependence(
    const Field& f, const std::vector<SparseRow>& rows, Scope scope);

Field baseFieldOf(const Field& f);  // same characteristic, no variables

}  // namespace freealg
