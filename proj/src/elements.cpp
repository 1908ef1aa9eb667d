#include "freealg/elements.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace freealg {

std::string varietyName(Variety v) {
  switch (v) {
    case Variety::All: return "all";
    case Variety::Associative: return "associative";
    case Variety::Commutative: return "commutative";
    case Variety::Anticommutative: return "anticommutative";
    case Variety::Lie: return "lie";
    case Variety::SpecialJordan: return "special-jordan";
    case Variety::Poisson: return "poisson";
    case Variety::TrivialMult: return "trivial-mult";
  }
  return "?";
}

Variety parseVariety(const std::string& name) {
  for (Variety v : {Variety::All, Variety::Associative, Variety::Commutative,
                    Variety::Anticommutative, Variety::Lie, Variety::SpecialJordan,
                    Variety::Poisson, Variety::TrivialMult})
    if (varietyName(v) == name) return v;
  throw ElementError("unknown variety: " + name);
}

int MonoKey::degree() const {
  int d = 0;
  for (int32_t c : code) d += c > 0;
  return d;
}

bool MonoKey::operator<(const MonoKey& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db;
  return code < o.code;
}

MonoKey treeKey(const MagmaWord& w) { return MonoKey{w.encode()}; }

MonoKey wordKey(const std::vector<int>& letters) {
  MonoKey k;
  k.code.assign(letters.begin(), letters.end());
  return k;
}

namespace {

bool treeCoded(Variety v) {
  return v == Variety::All || v == Variety::Commutative ||
         v == Variety::Anticommutative || v == Variety::TrivialMult;
}

MagmaWord leftNested(const std::vector<int>& word) {
  MagmaWord w = MagmaWord::leaf(word[0]);
  for (size_t i = 1; i < word.size(); ++i)
    w = MagmaWord::pair(w, MagmaWord::leaf(word[i]));
  return w;
}

}  // namespace

std::string MonoKey::sexpr(Variety tag) const {
  if (treeCoded(tag)) return MagmaWord::decode(code).sexpr();
  if (tag == Variety::Lie) {
    std::vector<int> w(code.begin(), code.end());
    return standardBracketing(w).sexpr();
  }
  // associative-style word, printed left-nested
  std::vector<int> w(code.begin(), code.end());
  if (w.empty()) return "(unit)";
  return leftNested(w).sexpr();
}

int FreeElement::degree() const {
  int d = 0;
  for (const auto& [k, c] : terms) d = std::max(d, k.degree());
  return d;
}

void FreeElement::addTerm(const MonoKey& k, const Scalar& c) {
  if (c.isZero()) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(k, c);
  } else {
    it->second = it->second + c;
    if (it->second.isZero()) terms.erase(it);
  }
}

namespace {
void requireCompat(const FreeElement& a, const FreeElement& b) {
  if (a.tag != b.tag) throw ElementError("variety tag mismatch");
  if (a.nGenerators != b.nGenerators) throw ElementError("generator count mismatch");
  if (!sameField(a.field, b.field)) throw ElementError("field mismatch");
}
}  // namespace

FreeElement FreeElement::operator+(const FreeElement& o) const {
  requireCompat(*this, o);
  FreeElement r = *this;
  for (const auto& [k, c] : o.terms) r.addTerm(k, c);
  return r;
}

FreeElement FreeElement::operator-() const {
  FreeElement r = *this;
  for (auto& [k, c] : r.terms) c = -c;
  return r;
}

FreeElement FreeElement::operator-(const FreeElement& o) const { return *this + (-o); }

FreeElement FreeElement::scaled(const Scalar& c) const {
  FreeElement r = zeroElement(tag, nGenerators, field);
  if (c.isZero()) return r;
  r.terms = terms;
  for (auto& [k, v] : r.terms) v = v * c;
  return r;
}

bool FreeElement::operator==(const FreeElement& o) const {
  return tag == o.tag && nGenerators == o.nGenerators && terms == o.terms;
}

std::string FreeElement::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    s += c.str() + " " + k.sexpr(tag);
  }
  return s;
}

FreeElement zeroElement(Variety v, int n, const Field& f) {
  FreeElement e;
  e.tag = v;
  e.nGenerators = n;
  e.field = f;
  return e;
}

FreeElement generatorElement(Variety v, int n, const Field& f, int index) {
  if (index < 1 || index > n) throw ElementError("generator index out of range");
  FreeElement e = zeroElement(v, n, f);
  if (treeCoded(v))
    e.addTerm(treeKey(MagmaWord::leaf(index)), Scalar::one(f));
  else
    e.addTerm(wordKey({index}), Scalar::one(f));
  return e;
}

FreeElement unitElement(Variety v, int n, const Field& f) {
  if (v != Variety::Associative && v != Variety::SpecialJordan)
    throw ElementError("unit adjunction only exists in the associative representation");
  FreeElement e = zeroElement(v, n, f);
  e.addTerm(wordKey({}), Scalar::one(f));
  return e;
}

// ---------------------------------------------------------------------------
// Lie representation: commutator expansion and Lyndon extraction

namespace {

using AssocPoly = std::map<std::vector<int>, mpz_class>;

void accum(AssocPoly& into, const std::vector<int>& w, const mpz_class& c) {
  auto it = into.find(w);
  if (it == into.end()) {
    if (c != 0) into.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

AssocPoly expandCommutators(const MagmaWord& w) {
  if (w.isLeaf()) return {{{w.generator()}, mpz_class(1)}};
  AssocPoly l = expandCommutators(w.left());
  AssocPoly r = expandCommutators(w.right());
  AssocPoly out;
  for (const auto& [wl, cl] : l)
    for (const auto& [wr, cr] : r) {
      std::vector<int> lr = wl;
      lr.insert(lr.end(), wr.begin(), wr.end());
      accum(out, lr, cl * cr);
      std::vector<int> rl = wr;
      rl.insert(rl.end(), wl.begin(), wl.end());
      accum(out, rl, -cl * cr);
    }
  return out;
}

// expansion of the standard bracketing of a Lyndon word; leading (lex-least)
// associative word is the Lyndon word itself with coefficient 1
const AssocPoly& lyndonExpansion(const std::vector<int>& word) {
  static std::map<std::vector<int>, AssocPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(word);
  if (it == cache.end())
    it = cache.emplace(word, expandCommutators(standardBracketing(word))).first;
  return it->second;
}

}  // namespace

FreeElement lieToAssoc(const FreeElement& e) {
  if (e.tag != Variety::Lie) throw ElementError("expected a Lie element");
  FreeElement out = zeroElement(Variety::Associative, e.nGenerators, e.field);
  for (const auto& [k, c] : e.terms) {
    std::vector<int> word(k.code.begin(), k.code.end());
    for (const auto& [w, z] : lyndonExpansion(word))
      out.addTerm(wordKey(w), c * Scalar::fromMpq(e.field, mpq_class(z)));
  }
  return out;
}

FreeElement assocToLie(const FreeElement& e) {
  if (e.tag != Variety::Associative) throw ElementError("expected an associative element");
  FreeElement rem = e;
  FreeElement out = zeroElement(Variety::Lie, e.nGenerators, e.field);
  while (!rem.isZero()) {
    auto it = rem.terms.begin();  // least in (degree, lex) order
    std::vector<int> word(it->first.code.begin(), it->first.code.end());
    if (!isLyndonWord(word))
      throw ElementError("polynomial is not in the Lie subspace");
    Scalar c = it->second;
    out.addTerm(it->first, c);
    for (const auto& [w, z] : lyndonExpansion(word))
      rem.addTerm(wordKey(w), -(c * Scalar::fromMpq(e.field, mpq_class(z))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// products

namespace {

FreeElement assocConcat(const FreeElement& a, const FreeElement& b) {
  FreeElement r = zeroElement(a.tag, a.nGenerators, a.field);
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      MonoKey k = ka;
      k.code.insert(k.code.end(), kb.code.begin(), kb.code.end());
      r.addTerm(k, ca * cb);
    }
  return r;
}

}  // namespace

FreeElement jordanCirc(const FreeElement& p, const FreeElement& q) {
  requireCompat(p, q);
  Scalar half = Scalar::fromInt(p.field, 2).inv();
  return (assocConcat(p, q) + assocConcat(q, p)).scaled(half);
}

FreeElement multiply(const FreeElement& a, const FreeElement& b) {
  requireCompat(a, b);
  const Field& f = a.field;
  switch (a.tag) {
    case Variety::All: {
      FreeElement r = zeroElement(a.tag, a.nGenerators, f);
      for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
          MonoKey k;
          k.code.reserve(1 + ka.code.size() + kb.code.size());
          k.code.push_back(0);
          k.code.insert(k.code.end(), ka.code.begin(), ka.code.end());
          k.code.insert(k.code.end(), kb.code.begin(), kb.code.end());
          r.addTerm(k, ca * cb);
        }
      return r;
    }
    case Variety::Associative:
      return assocConcat(a, b);
    case Variety::SpecialJordan:
      return jordanCirc(a, b);
    case Variety::Commutative:
    case Variety::Anticommutative: {
      bool anti = a.tag == Variety::Anticommutative;
      FreeElement r = zeroElement(a.tag, a.nGenerators, f);
      for (const auto& [ka, ca] : a.terms) {
        MagmaWord u = MagmaWord::decode(ka.code);
        for (const auto& [kb, cb] : b.terms) {
          MagmaWord v = MagmaWord::decode(kb.code);
          Cmp c = compareWords(u, v);
          if (anti && c == Cmp::Equal) continue;  // x^2 = 0
          bool swap = c == Cmp::Less;
          MagmaWord w = swap ? MagmaWord::pair(v, u) : MagmaWord::pair(u, v);
          Scalar coeff = ca * cb;
          if (anti && swap) coeff = -coeff;
          r.addTerm(treeKey(w), coeff);
        }
      }
      return r;
    }
    case Variety::Lie: {
      if (a.isZero() || b.isZero()) return zeroElement(a.tag, a.nGenerators, f);
      FreeElement pa = lieToAssoc(a), pb = lieToAssoc(b);
      return assocToLie(assocConcat(pa, pb) - assocConcat(pb, pa));
    }
    case Variety::TrivialMult:
      return zeroElement(a.tag, a.nGenerators, f);
    case Variety::Poisson:
      throw ElementError("Poisson elements use the two-operation term type");
  }
  throw ElementError("unreachable");
}

// ---------------------------------------------------------------------------
// normal form and evaluation

namespace {

// canonical regular-word form of a magma word; nullopt means zero
std::optional<std::pair<MagmaWord, int>> regularize(const MagmaWord& w, bool anti) {
  if (w.isLeaf()) return std::make_pair(w, 1);
  auto l = regularize(w.left(), anti);
  auto r = regularize(w.right(), anti);
  if (!l || !r) return std::nullopt;
  Cmp c = compareWords(l->first, r->first);
  if (anti && c == Cmp::Equal) return std::nullopt;
  int sign = l->second * r->second;
  if (c == Cmp::Less) {
    if (anti) sign = -sign;
    return std::make_pair(MagmaWord::pair(r->first, l->first), sign);
  }
  return std::make_pair(MagmaWord::pair(l->first, r->first), sign);
}

}  // namespace

FreeElement normalForm(const MagmaWord& w, Variety v, int n, const Field& f) {
  if (w.maxGenerator() > n) throw ElementError("word references generator beyond n");
  FreeElement e = zeroElement(v, n, f);
  switch (v) {
    case Variety::All:
      e.addTerm(treeKey(w), Scalar::one(f));
      return e;
    case Variety::Associative:
      e.addTerm(wordKey(w.leaves()), Scalar::one(f));
      return e;
    case Variety::Commutative:
    case Variety::Anticommutative: {
      auto r = regularize(w, v == Variety::Anticommutative);
      if (r) e.addTerm(treeKey(r->first), Scalar::fromInt(f, r->second));
      return e;
    }
    case Variety::Lie: {
      FreeElement assoc = zeroElement(Variety::Associative, n, f);
      for (const auto& [word, z] : expandCommutators(w))
        assoc.addTerm(wordKey(word), Scalar::fromMpq(f, mpq_class(z)));
      return assocToLie(assoc);
    }
    case Variety::SpecialJordan: {
      if (w.isLeaf()) {
        e.addTerm(wordKey({w.generator()}), Scalar::one(f));
        return e;
      }
      return jordanCirc(normalForm(w.left(), v, n, f), normalForm(w.right(), v, n, f));
    }
    case Variety::TrivialMult:
      if (w.isLeaf()) e.addTerm(treeKey(w), Scalar::one(f));
      return e;
    case Variety::Poisson:
      throw ElementError("Poisson words use the two-operation term type");
  }
  throw ElementError("unreachable");
}

FreeElement evaluateMonomial(const MagmaWord& m, const std::vector<FreeElement>& assignment) {
  if (assignment.empty()) throw ElementError("empty assignment");
  for (size_t i = 1; i < assignment.size(); ++i) requireCompat(assignment[0], assignment[i]);
  std::function<FreeElement(const MagmaWord&)> rec = [&](const MagmaWord& w) -> FreeElement {
    if (w.isLeaf()) {
      int g = w.generator();
      if (g > (int)assignment.size())
        throw ElementError("monomial references unassigned generator " + std::to_string(g));
      return assignment[(size_t)g - 1];
    }
    return multiply(rec(w.left()), rec(w.right()));
  };
  return rec(m);
}

// ---------------------------------------------------------------------------
// canonical bases

const std::vector<BasisMonomial>& varietyBasis(Variety v, int n, int degree, const Field& f) {
  if (degree < 1 || n < 1) throw ElementError("need degree >= 1 and n >= 1");
  if (v == Variety::Poisson)
    throw ElementError("the Poisson check is layered; no single graded basis table");
  static std::map<std::tuple<Variety, int, int, std::string>, std::vector<BasisMonomial>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(v, n, degree, fieldSpecString(f));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<BasisMonomial> out;
  switch (v) {
    case Variety::All:
      for (const auto& w : enumerateWords(n, degree))
        out.push_back({v, degree, w, normalForm(w, v, n, f)});
      break;
    case Variety::Associative: {
      std::vector<int> word((size_t)degree, 1);
      for (;;) {
        MagmaWord pre = leftNested(word);
        out.push_back({v, degree, pre, normalForm(pre, v, n, f)});
        int i = degree - 1;
        while (i >= 0 && word[(size_t)i] == n) word[(size_t)i--] = 1;
        if (i < 0) break;
        ++word[(size_t)i];
      }
      break;
    }
    case Variety::Commutative:
    case Variety::Anticommutative:
      for (const auto& w : regularWords(n, degree, v == Variety::Anticommutative))
        out.push_back({v, degree, w, normalForm(w, v, n, f)});
      break;
    case Variety::Lie:
      for (const auto& lb : lyndonBasis(n, degree)) {
        FreeElement e = zeroElement(v, n, f);
        e.addTerm(wordKey(lb.word), Scalar::one(f));
        out.push_back({v, degree, lb.bracketing, std::move(e)});
      }
      break;
    case Variety::SpecialJordan: {
      // greedy rank-increasing scan of all magma words in the shared order
      DependenceReducer red(f);
      std::map<MonoKey, long> cols;
      for (const auto& w : enumerateWords(n, degree)) {
        FreeElement nf = normalForm(w, v, n, f);
        SparseRow row;
        for (const auto& [k, c] : nf.terms) {
          auto [cit, unused] = cols.emplace(k, (long)cols.size());
          row.emplace(cit->second, c);
        }
        size_t before = red.rank();
        red.addRow(std::move(row));
        if (red.rank() > before) out.push_back({v, degree, w, std::move(nf)});
      }
      break;
    }
    case Variety::TrivialMult:
      if (degree == 1)
        for (int g = 1; g <= n; ++g) {
          MagmaWord w = MagmaWord::leaf(g);
          out.push_back({v, degree, w, normalForm(w, v, n, f)});
        }
      break;
    case Variety::Poisson:
      break;  // handled above
  }
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// identities

FreeElement randomElement(Variety v, int n, const Field& f, int maxDegree,
                          std::mt19937_64& rng, int maxTerms) {
  FreeElement e = zeroElement(v, n, f);
  int terms = 1 + (int)(rng() % (unsigned)maxTerms);
  for (int t = 0; t < terms; ++t) {
    int d = 1 + (int)(rng() % (unsigned)maxDegree);
    const auto& basis = varietyBasis(v, n, d, f);
    if (basis.empty()) continue;
    const BasisMonomial& m = basis[rng() % basis.size()];
    long a = (long)(rng() % 5) - 2;
    Scalar c = Scalar::fromInt(f, a);
    if (f->nvars() > 0 && rng() % 2) {
      long b = (long)(rng() % 5) - 2;
      c = c + Scalar::variable(f, f->vars()[0]) * Scalar::fromInt(f, b);
    }
    if (c.isZero()) c = Scalar::one(f);
    e = e + m.payload.scaled(c);
  }
  return e;
}

IdentityReport identityCheck(Variety v, const std::vector<FreeElement>& sample,
                             int trials, uint64_t seed) {
  IdentityReport rep;
  if (sample.empty() && trials == 0) return rep;
  int n = sample.empty() ? 2 : sample[0].nGenerators;
  Field f = sample.empty() ? parseFieldSpec("Q") : sample[0].field;
  std::vector<FreeElement> pool = sample;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) pool.push_back(randomElement(v, n, f, 2, rng));

  auto fail = [&](const std::string& what) {
    rep.passed = false;
    rep.violation = what;
  };
  auto product = [&](const FreeElement& a, const FreeElement& b) { return multiply(a, b); };

  size_t budget = 200;
  for (size_t i = 0; i < pool.size() && rep.passed; ++i)
    for (size_t j = 0; j < pool.size() && rep.passed; ++j) {
      if (budget == 0) return rep;
      --budget;
      const FreeElement &a = pool[i], &b = pool[j];
      switch (v) {
        case Variety::All:
          break;  // no identities
        case Variety::Associative:
          for (size_t k = 0; k < pool.size() && rep.passed; ++k)
            if (!(product(product(a, b), pool[k]) == product(a, product(b, pool[k]))))
              fail("associativity violated");
          break;
        case Variety::Commutative:
          if (!(product(a, b) == product(b, a))) fail("commutativity violated");
          break;
        case Variety::Anticommutative:
          if (!(product(a, b) + product(b, a)).isZero()) fail("anticommutativity violated");
          if (!product(a, a).isZero()) fail("x^2 = 0 violated");
          break;
        case Variety::Lie: {
          if (!product(a, a).isZero()) fail("x^2 = 0 violated");
          for (size_t k = 0; k < pool.size() && rep.passed; ++k) {
            const FreeElement& c = pool[k];
            FreeElement jac = product(product(a, b), c) + product(product(b, c), a) +
                              product(product(c, a), b);
            if (!jac.isZero()) fail("Jacobi identity violated");
          }
          break;
        }
        case Variety::SpecialJordan: {
          if (!(product(a, b) == product(b, a))) fail("circle commutativity violated");
          FreeElement a2 = product(a, a);
          if (!(product(product(a2, b), a) == product(a2, product(b, a))))
            fail("Jordan identity violated");
          break;
        }
        case Variety::TrivialMult:
          if (!product(a, b).isZero()) fail("x1x2 = 0 violated");
          break;
        case Variety::Poisson:
          throw ElementError("Poisson identities are checked on Poisson terms");
      }
    }
  return rep;
}

}  // namespace freealg
