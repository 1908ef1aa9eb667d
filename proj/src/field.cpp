#include "freealg/field.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace freealg {

// ---------------------------------------------------------------------------
// field context

FieldCtx::FieldCtx(FieldSpec spec) : spec_(std::move(spec)) {
  int p = spec_.characteristic;
  if (p != 0) {
    if (p == 2) throw FieldError("characteristic 2 is not supported (1/2 must exist)");
    if (p < 2) throw FieldError("characteristic must be 0 or an odd prime");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw FieldError("characteristic must be prime: " + std::to_string(p));
  }
  std::set<std::string> seen;
  for (const auto& v : spec_.vars) {
    if (v.empty()) throw FieldError("empty variable name");
    if (!seen.insert(v).second) throw FieldError("duplicate variable name: " + v);
  }
}

size_t FieldCtx::varIndex(const std::string& name) const {
  for (size_t i = 0; i < spec_.vars.size(); ++i)
    if (spec_.vars[i] == name) return i;
  throw FieldError("unknown variable: " + name);
}

mpq_class FieldCtx::cnorm(const mpq_class& x) const {
  if (characteristic() == 0) {
    mpq_class r = x;
    r.canonicalize();
    return r;
  }
  mpz_class p(characteristic());
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    throw FieldError("denominator not invertible mod p");
  mpz_class r = (num * dinv) % p;
  if (r < 0) r += p;
  return mpq_class(r);
}

mpq_class FieldCtx::cinv(const mpq_class& x) const {
  if (x == 0) throw FieldError("inversion of zero");
  if (characteristic() == 0) return mpq_class(1) / x;
  mpz_class p(characteristic());
  mpz_class num = cnorm(x).get_num();
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
    throw FieldError("inversion of zero mod p");
  return mpq_class(inv);
}

Field makeField(FieldSpec spec) { return std::make_shared<FieldCtx>(std::move(spec)); }

bool sameField(const Field& a, const Field& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->characteristic() == b->characteristic() && a->vars() == b->vars();
}

Field parseFieldSpec(const std::string& text) {
  size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
  FieldSpec spec;
  skip();
  if (i < text.size() && text[i] == 'Q') {
    ++i;
  } else if (text.compare(i, 3, "GF(") == 0) {
    i += 3;
    size_t j = text.find(')', i);
    if (j == std::string::npos) throw FieldError("malformed field spec: " + text);
    spec.characteristic = std::stoi(text.substr(i, j - i));
    i = j + 1;
  } else {
    throw FieldError("malformed field spec: " + text);
  }
  skip();
  if (i < text.size() && text[i] == '(') {
    size_t j = text.find(')', i);
    if (j == std::string::npos) throw FieldError("unbalanced parenthesis in field spec");
    std::string inner = text.substr(i + 1, j - i - 1);
    std::istringstream ss(inner);
    std::string name;
    while (std::getline(ss, name, ',')) {
      name.erase(std::remove_if(name.begin(), name.end(),
                                [](unsigned char c) { return std::isspace(c); }),
                 name.end());
      spec.vars.push_back(name);
    }
    i = j + 1;
  }
  skip();
  if (i != text.size()) throw FieldError("trailing characters in field spec: " + text);
  return makeField(std::move(spec));
}

std::string fieldSpecString(const Field& f) {
  std::string s = f->characteristic() == 0 ? "Q" : "GF(" + std::to_string(f->characteristic()) + ")";
  if (f->nvars() > 0) {
    s += "(";
    for (size_t i = 0; i < f->nvars(); ++i) {
      if (i) s += ",";
      s += f->vars()[i];
    }
    s += ")";
  }
  return s;
}

// ---------------------------------------------------------------------------
// polynomials

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = 0, db = 0;
  for (unsigned e : a) da += e;
  for (unsigned e : b) db += e;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool Poly::constant() const {
  if (terms.empty()) return true;
  if (terms.size() > 1) return false;
  for (unsigned e : terms.begin()->first)
    if (e) return false;
  return true;
}

Poly polyZero() { return Poly{}; }

Poly polyConst(const FieldCtx& f, const mpq_class& c) {
  Poly p;
  mpq_class v = f.cnorm(c);
  if (v != 0) p.terms.emplace(Exponents(f.nvars(), 0), v);
  return p;
}

Poly polyVar(const FieldCtx& f, size_t v) {
  Poly p;
  Exponents e(f.nvars(), 0);
  e[v] = 1;
  p.terms.emplace(std::move(e), mpq_class(1));
  return p;
}

Poly polyAdd(const FieldCtx& f, const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms.emplace(e, c);
    } else {
      it->second = f.cnorm(it->second + c);
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

Poly polyNeg(const FieldCtx& f, const Poly& a) {
  Poly r;
  for (const auto& [e, c] : a.terms) r.terms.emplace(e, f.cnorm(-c));
  return r;
}

Poly polySub(const FieldCtx& f, const Poly& a, const Poly& b) {
  return polyAdd(f, a, polyNeg(f, b));
}

Poly polyMul(const FieldCtx& f, const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Exponents e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        mpq_class c = f.cnorm(ca * cb);
        if (c != 0) r.terms.emplace(std::move(e), std::move(c));
      } else {
        it->second = f.cnorm(it->second + ca * cb);
        if (it->second == 0) r.terms.erase(it);
      }
    }
  return r;
}

Poly polyMonic(const FieldCtx& f, const Poly& a) {
  if (a.zero()) return a;
  mpq_class lc = a.terms.rbegin()->second;
  mpq_class inv = f.cinv(lc);
  Poly r;
  for (const auto& [e, c] : a.terms) r.terms.emplace(e, f.cnorm(c * inv));
  return r;
}

int polyDegIn(const Poly& a, size_t v) {
  int d = -1;
  for (const auto& [e, c] : a.terms) d = std::max(d, (int)e[v]);
  return d;  // -1 for the zero polynomial
}

namespace {

// terms of a with exponent e in variable v, the v slot zeroed
Poly coeffOf(const Poly& a, size_t v, unsigned e) {
  Poly r;
  for (const auto& [ex, c] : a.terms)
    if (ex[v] == e) {
      Exponents e2 = ex;
      e2[v] = 0;
      r.terms.emplace(std::move(e2), c);
    }
  return r;
}

Poly shiftVar(const Poly& a, size_t v, unsigned by) {
  Poly r;
  for (const auto& [ex, c] : a.terms) {
    Exponents e2 = ex;
    e2[v] += by;
    r.terms.emplace(std::move(e2), c);
  }
  return r;
}

Poly pseudoRem(const FieldCtx& f, Poly a, const Poly& b, size_t v) {
  int db = polyDegIn(b, v);
  Poly lcb = coeffOf(b, v, (unsigned)db);
  int da;
  while (!a.zero() && (da = polyDegIn(a, v)) >= db) {
    Poly lca = coeffOf(a, v, (unsigned)da);
    a = polySub(f, polyMul(f, lcb, a),
                polyMul(f, shiftVar(lca, v, (unsigned)(da - db)), b));
  }
  return a;
}

Poly contentWrt(const FieldCtx& f, const Poly& a, size_t v) {
  Poly g = polyZero();
  int d = polyDegIn(a, v);
  for (int e = 0; e <= d; ++e) {
    Poly c = coeffOf(a, v, (unsigned)e);
    if (!c.zero()) g = polyGcd(f, g, c);
  }
  return g;
}

}  // namespace

Poly polyDivExact(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (b.zero()) throw FieldError("division by zero polynomial");
  Poly q, r = a;
  while (!r.zero()) {
    const auto& [er, cr] = *r.terms.rbegin();
    const auto& [eb, cb] = *b.terms.rbegin();
    Exponents eq(er.size());
    for (size_t i = 0; i < er.size(); ++i) {
      if (er[i] < eb[i]) throw FieldError("inexact polynomial division");
      eq[i] = er[i] - eb[i];
    }
    mpq_class cq = f.characteristic() == 0 ? mpq_class(cr / cb)
                                           : f.cnorm(cr * f.cinv(cb));
    Poly t;
    t.terms.emplace(std::move(eq), f.cnorm(cq));
    r = polySub(f, r, polyMul(f, t, b));
    q = polyAdd(f, q, t);
  }
  return q;
}

Poly polyGcd(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.zero()) return polyMonic(f, b);
  if (b.zero()) return polyMonic(f, a);
  if (a.constant() || b.constant()) return polyConst(f, 1);

  // monomial fast path
  if (a.terms.size() == 1 || b.terms.size() == 1) {
    const Poly& mono = a.terms.size() == 1 ? a : b;
    const Poly& other = a.terms.size() == 1 ? b : a;
    Exponents g = mono.terms.begin()->first;
    for (const auto& [e, c] : other.terms)
      for (size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], e[i]);
    Poly r;
    r.terms.emplace(std::move(g), mpq_class(1));
    return r;
  }

  size_t v = 0;
  while (v < f.nvars() && polyDegIn(a, v) <= 0 && polyDegIn(b, v) <= 0) ++v;
  if (v == f.nvars()) return polyConst(f, 1);

  if (polyDegIn(a, v) <= 0) return polyGcd(f, a, contentWrt(f, b, v));
  if (polyDegIn(b, v) <= 0) return polyGcd(f, contentWrt(f, a, v), b);

  Poly ca = contentWrt(f, a, v), cb = contentWrt(f, b, v);
  Poly pa = polyDivExact(f, a, ca), pb = polyDivExact(f, b, cb);
  Poly g = polyGcd(f, ca, cb);
  while (!pb.zero()) {
    Poly r = pseudoRem(f, pa, pb, v);
    pa = std::move(pb);
    pb = r.zero() ? r : polyDivExact(f, r, contentWrt(f, r, v));
  }
  pa = polyDivExact(f, pa, contentWrt(f, pa, v));
  return polyMonic(f, polyMul(f, g, pa));
}

Poly polyLcm(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.zero() || b.zero()) return polyZero();
  return polyMonic(f, polyMul(f, polyDivExact(f, a, polyGcd(f, a, b)), b));
}

std::string polyString(const FieldCtx& f, const Poly& a) {
  if (a.zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += f.vars()[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = c.get_str();
    std::string term;
    if (mono.empty())
      term = cs;
    else if (c == 1)
      term = mono;
    else if (c == -1)
      term = "-" + mono;
    else
      term = cs + "*" + mono;
    if (!first) s += " + ";
    s += term;
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------------------
// scalars

Scalar Scalar::make(Field f, Poly num, Poly den) {
  if (den.zero()) throw FieldError("zero denominator");
  Scalar s;
  s.field_ = std::move(f);
  if (num.zero()) {
    s.num_ = polyZero();
    s.den_ = polyConst(*s.field_, 1);
    return s;
  }
  Poly g = polyGcd(*s.field_, num, den);
  if (!g.constant()) {
    num = polyDivExact(*s.field_, num, g);
    den = polyDivExact(*s.field_, den, g);
  }
  mpq_class lc = den.terms.rbegin()->second;
  if (lc != 1) {
    mpq_class inv = s.field_->cinv(lc);
    Poly cn, cd;
    for (const auto& [e, c] : num.terms) cn.terms.emplace(e, s.field_->cnorm(c * inv));
    for (const auto& [e, c] : den.terms) cd.terms.emplace(e, s.field_->cnorm(c * inv));
    num = std::move(cn);
    den = std::move(cd);
  }
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  return s;
}

Scalar Scalar::zero(const Field& f) { return make(f, polyZero(), polyConst(*f, 1)); }
Scalar Scalar::one(const Field& f) { return make(f, polyConst(*f, 1), polyConst(*f, 1)); }
Scalar Scalar::fromInt(const Field& f, long v) { return make(f, polyConst(*f, mpq_class(v)), polyConst(*f, 1)); }
Scalar Scalar::fromMpq(const Field& f, const mpq_class& v) { return make(f, polyConst(*f, v), polyConst(*f, 1)); }
Scalar Scalar::variable(const Field& f, const std::string& name) {
  return make(f, polyVar(*f, f->varIndex(name)), polyConst(*f, 1));
}

bool Scalar::isOne() const {
  return !isZero() && num_.constant() && den_.constant() &&
         num_.terms.begin()->second == den_.terms.begin()->second;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (!sameField(field_, o.field_)) throw FieldError("field mismatch");
  const FieldCtx& f = *field_;
  return make(field_,
              polyAdd(f, polyMul(f, num_, o.den_), polyMul(f, o.num_, den_)),
              polyMul(f, den_, o.den_));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (!sameField(field_, o.field_)) throw FieldError("field mismatch");
  const FieldCtx& f = *field_;
  return make(field_, polyMul(f, num_, o.num_), polyMul(f, den_, o.den_));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = polyNeg(*field_, s.num_);
  return s;
}

Scalar Scalar::inv() const {
  if (isZero()) throw FieldError("inversion of zero");
  return make(field_, den_, num_);
}

namespace {
int cmpPoly(const Poly& a, const Poly& b) {
  GrlexLess less;
  auto ia = a.terms.begin(), ib = b.terms.begin();
  for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
    if (less(ia->first, ib->first)) return -1;
    if (less(ib->first, ia->first)) return 1;
    int c = cmp(ia->second, ib->second);
    if (c) return c;
  }
  if (ia != a.terms.end()) return 1;
  if (ib != b.terms.end()) return -1;
  return 0;
}
}  // namespace

bool Scalar::operator==(const Scalar& o) const {
  return cmpPoly(num_, o.num_) == 0 && cmpPoly(den_, o.den_) == 0;
}

bool Scalar::operator<(const Scalar& o) const {
  int c = cmpPoly(num_, o.num_);
  if (c) return c < 0;
  return cmpPoly(den_, o.den_) < 0;
}

std::string Scalar::str() const {
  const FieldCtx& f = *field_;
  if (den_.constant() && !den_.zero() && den_.terms.begin()->second == 1) {
    if (num_.constant()) return num_.zero() ? "0" : num_.terms.begin()->second.get_str();
    if (num_.terms.size() == 1) return polyString(f, num_);
    return "(" + polyString(f, num_) + ")";
  }
  std::string n = num_.terms.size() == 1 && num_.terms.begin()->second > 0
                      ? polyString(f, num_)
                      : "(" + polyString(f, num_) + ")";
  return n + "/(" + polyString(f, den_) + ")";
}

Scalar liftScalar(const Scalar& s, const Field& bigger) {
  const Field& src = s.field();
  std::vector<size_t> slot(src->nvars());
  for (size_t i = 0; i < src->nvars(); ++i) slot[i] = bigger->varIndex(src->vars()[i]);
  auto liftPoly = [&](const Poly& p) {
    Poly r;
    for (const auto& [e, c] : p.terms) {
      Exponents e2(bigger->nvars(), 0);
      for (size_t i = 0; i < e.size(); ++i) e2[slot[i]] = e[i];
      r.terms.emplace(std::move(e2), c);
    }
    return r;
  };
  return Scalar::make(bigger, liftPoly(s.num()), liftPoly(s.den()));
}

Scalar specializeScalar(const Scalar& s, const Field& target,
                        const std::map<std::string, mpq_class>& values) {
  const Field& src = s.field();
  std::vector<long> slot(src->nvars(), -1);      // target slot or -1
  std::vector<mpq_class> val(src->nvars());
  for (size_t i = 0; i < src->nvars(); ++i) {
    const std::string& name = src->vars()[i];
    auto it = values.find(name);
    if (it != values.end()) {
      val[i] = it->second;
    } else {
      slot[i] = (long)target->varIndex(name);
    }
  }
  auto specPoly = [&](const Poly& p) {
    Poly r;
    for (const auto& [e, c] : p.terms) {
      mpq_class coeff = c;
      Exponents e2(target->nvars(), 0);
      for (size_t i = 0; i < e.size(); ++i) {
        if (slot[i] >= 0) {
          e2[(size_t)slot[i]] = e[i];
        } else {
          for (unsigned k = 0; k < e[i]; ++k) coeff *= val[i];
        }
      }
      coeff = target->cnorm(coeff);
      if (coeff == 0) continue;
      auto it = r.terms.find(e2);
      if (it == r.terms.end()) {
        r.terms.emplace(std::move(e2), coeff);
      } else {
        it->second = target->cnorm(it->second + coeff);
        if (it->second == 0) r.terms.erase(it);
      }
    }
    return r;
  };
  Poly den = specPoly(s.den());
  if (den.zero()) throw FieldError("specialization hits a pole");
  return Scalar::make(target, specPoly(s.num()), std::move(den));
}

// ---------------------------------------------------------------------------
// scalar literal parser

namespace {

struct ScalarParser {
  const Field& field;
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw FieldError("scalar parse error at position " + std::to_string(pos) + ": " + msg);
  }
  void skip() { while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos; }
  bool peek(char c) {
    skip();
    return pos < text.size() && text[pos] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (peekMinusBinary()) { ++pos; v = v - term(); }
      else return v;
    }
  }
  bool peekMinusBinary() {
    skip();
    return pos < text.size() && text[pos] == '-';
  }
  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (eat('*')) v = v * factor();
      else if (eat('/')) {
        Scalar d = factor();
        if (d.isZero()) fail("division by zero");
        v = v / d;
      } else return v;
    }
  }
  Scalar factor() {
    if (eat('-')) return -factor();
    Scalar v = primary();
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
      if (pos == start) fail("expected exponent");
      unsigned long e = std::stoul(text.substr(start, pos - start));
      Scalar r = Scalar::one(field);
      for (unsigned long k = 0; k < e; ++k) r = r * v;
      v = r;
    }
    return v;
  }
  Scalar primary() {
    skip();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
      return Scalar::fromMpq(field, mpq_class(text.substr(start, pos - start)));
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      try {
        return Scalar::variable(field, name);
      } catch (const FieldError&) {
        fail("unknown variable '" + name + "'");
      }
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Scalar parseScalar(const Field& f, const std::string& text) {
  ScalarParser p{f, text};
  Scalar v = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  return v;
}

// ---------------------------------------------------------------------------
// linear algebra

ScalarMatrix ScalarMatrix::make(const Field& f, size_t r, size_t c) {
  ScalarMatrix m;
  m.rows = r;
  m.cols = c;
  m.field = f;
  m.data.assign(r * c, Scalar::zero(f));
  return m;
}

RankKernel rankAndKernel(const ScalarMatrix& m) {
  RankKernel out;
  if (m.cols == 0) return out;
  const Field& f = m.field;
  const FieldCtx& fc = *f;

  // clear denominators row-wise (right kernel is preserved), then run
  // one-step fraction-free elimination on polynomial entries
  std::vector<std::vector<Poly>> a(m.rows, std::vector<Poly>(m.cols));
  for (size_t i = 0; i < m.rows; ++i) {
    Poly d = polyConst(fc, 1);
    for (size_t j = 0; j < m.cols; ++j) d = polyLcm(fc, d, m.at(i, j).den());
    for (size_t j = 0; j < m.cols; ++j) {
      const Scalar& s = m.at(i, j);
      a[i][j] = polyMul(fc, s.num(), polyDivExact(fc, d, s.den()));
    }
  }

  std::vector<size_t> pivotCol;
  Poly prev = polyConst(fc, 1);
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && a[p][c].zero()) ++p;
    if (p == m.rows) continue;
    std::swap(a[p], a[r]);
    const Poly piv = a[r][c];
    for (size_t i = r + 1; i < m.rows; ++i) {
      for (size_t j = c + 1; j < m.cols; ++j) {
        Poly t = polySub(fc, polyMul(fc, a[i][j], piv), polyMul(fc, a[r][j], a[i][c]));
        a[i][j] = polyDivExact(fc, t, prev);
      }
      a[i][c] = polyZero();
    }
    prev = piv;
    pivotCol.push_back(c);
    ++r;
  }
  out.rank = r;

  // back-substitution over the fraction field for each free column
  std::vector<bool> isPivot(m.cols, false);
  for (size_t c : pivotCol) isPivot[c] = true;
  for (size_t fcol = 0; fcol < m.cols; ++fcol) {
    if (isPivot[fcol]) continue;
    std::vector<Scalar> x(m.cols, Scalar::zero(f));
    x[fcol] = Scalar::one(f);
    for (size_t k = pivotCol.size(); k-- > 0;) {
      size_t pc = pivotCol[k];
      Scalar acc = Scalar::zero(f);
      for (size_t j = pc + 1; j < m.cols; ++j) {
        if (x[j].isZero() || a[k][j].zero()) continue;
        acc = acc + Scalar::make(f, a[k][j], polyConst(fc, 1)) * x[j];
      }
      x[pc] = -(acc / Scalar::make(f, a[k][pc], polyConst(fc, 1)));
    }
    out.kernel.push_back(std::move(x));
  }
  return out;
}

Scalar determinant(const Field& f, const std::vector<Scalar>& entries, size_t n) {
  if (n == 0) return Scalar::one(f);
  std::vector<Scalar> a = entries;
  Scalar det = Scalar::one(f);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p * n + c].isZero()) ++p;
    if (p == n) return Scalar::zero(f);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
      det = -det;
    }
    Scalar piv = a[c * n + c];
    det = det * piv;
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i * n + c].isZero()) continue;
      Scalar factor = a[i * n + c] / piv;
      for (size_t j = c; j < n; ++j)
        a[i * n + j] = a[i * n + j] - factor * a[c * n + j];
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// dependence reduction

Scope parseScope(const std::string& s) {
  if (s == "full-field") return Scope::FullField;
  if (s == "base-subfield") return Scope::BaseSubfield;
  throw FieldError("unknown scope: " + s);
}

std::string scopeName(Scope s) {
  return s == Scope::FullField ? "full-field" : "base-subfield";
}

std::optional<std::map<size_t, Scalar>> DependenceReducer::addRow(SparseRow row) {
  std::map<size_t, Scalar> aug;
  aug.emplace(added_, Scalar::one(field_));
  ++added_;
  for (const auto& ech : rows_) {
    if (row.empty()) break;
    long pc = ech.entries.begin()->first;
    auto it = row.find(pc);
    if (it == row.end()) continue;
    Scalar c = it->second;  // echelon pivot is 1
    for (const auto& [col, v] : ech.entries) {
      auto jt = row.find(col);
      Scalar nv = (jt == row.end() ? Scalar::zero(field_) : jt->second) - c * v;
      if (nv.isZero()) {
        if (jt != row.end()) row.erase(jt);
      } else if (jt == row.end()) {
        row.emplace(col, std::move(nv));
      } else {
        jt->second = std::move(nv);
      }
    }
    for (const auto& [idx, v] : ech.aug) {
      auto jt = aug.find(idx);
      Scalar nv = (jt == aug.end() ? Scalar::zero(field_) : jt->second) - c * v;
      if (nv.isZero()) {
        if (jt != aug.end()) aug.erase(jt);
      } else if (jt == aug.end()) {
        aug.emplace(idx, std::move(nv));
      } else {
        jt->second = std::move(nv);
      }
    }
  }
  if (row.empty()) return aug;

  Scalar pivInv = row.begin()->second.inv();
  EchRow er;
  for (auto& [col, v] : row) er.entries.emplace(col, v * pivInv);
  for (auto& [idx, v] : aug) er.aug.emplace(idx, v * pivInv);
  long newPivot = er.entries.begin()->first;
  auto where = std::lower_bound(rows_.begin(), rows_.end(), newPivot,
                                [](const EchRow& e, long p) {
                                  return e.entries.begin()->first < p;
                                });
  rows_.insert(where, std::move(er));
  return std::nullopt;
}

Field baseFieldOf(const Field& f) {
  return makeField(FieldSpec{f->characteristic(), {}});
}

std::optional<std::map<size_t, Scalar>> scopedDependence(
    const Field& f, const std::vector<SparseRow>& rows, Scope scope) {
  if (scope == Scope::FullField || f->nvars() == 0) {
    DependenceReducer red(f);
    for (const auto& r : rows) {
      if (auto w = red.addRow(r)) return w;
    }
    return std::nullopt;
  }

  const FieldCtx& fc = *f;
  Field base = baseFieldOf(f);

  // one global common denominator: K_0-independence is invariant under a
  // shared rescaling, never under per-row rescaling
  Poly d = polyConst(fc, 1);
  for (const auto& r : rows)
    for (const auto& [col, s] : r) d = polyLcm(fc, d, s.den());

  DependenceReducer red(base);
  std::map<std::pair<long, Exponents>, long> colIds;
  for (const auto& r : rows) {
    SparseRow expanded;
    for (const auto& [col, s] : r) {
      Poly p = polyMul(fc, s.num(), polyDivExact(fc, d, s.den()));
      for (const auto& [e, c] : p.terms) {
        auto key = std::make_pair(col, e);
        auto it = colIds.find(key);
        long id;
        if (it == colIds.end()) {
          id = (long)colIds.size();
          colIds.emplace(key, id);
        } else {
          id = it->second;
        }
        Scalar v = Scalar::fromMpq(base, c);
        auto jt = expanded.find(id);
        if (jt == expanded.end()) expanded.emplace(id, v);
        else jt->second = jt->second + v;
      }
    }
    for (auto it = expanded.begin(); it != expanded.end();)
      it = it->second.isZero() ? expanded.erase(it) : std::next(it);
    if (auto w = red.addRow(std::move(expanded))) return w;
  }
  return std::nullopt;
}

BaseIndependence baseIndependence(const Field& f,
                                  const std::vector<std::vector<Scalar>>& vectors) {
  BaseIndependence out;
  std::vector<SparseRow> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    SparseRow r;
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].isZero()) r.emplace((long)j, v[j]);
    rows.push_back(std::move(r));
  }
  auto w = scopedDependence(f, rows, Scope::BaseSubfield);
  if (w) {
    out.independent = false;
    Field base = baseFieldOf(f);
    out.witness.assign(vectors.size(), Scalar::zero(base));
    for (const auto& [idx, c] : *w) out.witness[idx] = c;
  }
  return out;
}

}  // namespace freealg
