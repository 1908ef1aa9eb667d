#include "freealg/poisson.hpp"

#include <algorithm>
#include <sstream>

namespace freealg {

PoissonCtx::PoissonCtx(int n, const Field& f) : n_(n), field_(f) {
  if (n < 1) throw ElementError("need n >= 1");
  extendTo(1);
}

void PoissonCtx::extendTo(int degree) {
  while (tabledDegree_ < degree) {
    ++tabledDegree_;
    for (const auto& lb : lyndonBasis(n_, tabledDegree_)) {
      ids_.emplace(lb.word, (long)words_.size());
      words_.push_back(lb.word);
    }
  }
}

long PoissonCtx::letterId(const std::vector<int>& lyndonWord) {
  extendTo((int)lyndonWord.size());
  auto it = ids_.find(lyndonWord);
  if (it == ids_.end()) throw ElementError("not a Lyndon word over this alphabet");
  return it->second;
}

const std::vector<int>& PoissonCtx::letterWord(long id) const {
  if (id < 0 || id >= (long)words_.size()) throw ElementError("unknown letter id");
  return words_[(size_t)id];
}

const std::map<long, Scalar>& PoissonCtx::letterBracket(long a, long b) {
  auto it = brackets_.find({a, b});
  if (it != brackets_.end()) return it->second;
  MagmaWord pair = MagmaWord::pair(standardBracketing(letterWord(a)),
                                   standardBracketing(letterWord(b)));
  FreeElement lie = normalForm(pair, Variety::Lie, n_, field_);
  std::map<long, Scalar> out;
  for (const auto& [k, c] : lie.terms) {
    std::vector<int> w(k.code.begin(), k.code.end());
    out.emplace(letterId(w), c);
  }
  return brackets_.emplace(std::make_pair(a, b), std::move(out)).first->second;
}

Poisson makePoissonCtx(int n, const Field& f) {
  return std::make_shared<PoissonCtx>(n, f);
}

int PoissonElement::totalDegree() const {
  int d = 0;
  for (const auto& [w, c] : terms) {
    int t = 0;
    for (long id : w) t += ctx->letterDegree(id);
    d = std::max(d, t);
  }
  return d;
}

void PoissonElement::addTerm(const std::vector<long>& rawWord, const Scalar& c) {
  if (c.isZero()) return;
  // canonical monomial: sorted letter multiset (the product is commutative;
  // a noncommutative product cannot carry an antisymmetric Leibniz bracket)
  std::vector<long> word = rawWord;
  std::sort(word.begin(), word.end());
  auto it = terms.find(word);
  if (it == terms.end()) {
    terms.emplace(word, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.isZero()) terms.erase(it);
}

PoissonElement PoissonElement::operator+(const PoissonElement& o) const {
  PoissonElement out = *this;
  for (const auto& [w, c] : o.terms) out.addTerm(w, c);
  return out;
}

PoissonElement PoissonElement::operator-(const PoissonElement& o) const {
  PoissonElement out = *this;
  for (const auto& [w, c] : o.terms) out.addTerm(w, -c);
  return out;
}

PoissonElement PoissonElement::operator-() const {
  return poissonZero(ctx) - *this;
}

PoissonElement PoissonElement::scaled(const Scalar& c) const {
  PoissonElement out = poissonZero(ctx);
  for (const auto& [w, k] : terms) out.addTerm(w, k * c);
  return out;
}

bool PoissonElement::operator==(const PoissonElement& o) const {
  return (*this - o).isZero();
}

std::string PoissonElement::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << " ";
    if (w.empty()) os << "1";
    for (long id : w) {
      os << "[";
      const auto& lw = ctx->letterWord(id);
      for (size_t i = 0; i < lw.size(); ++i) os << (i ? " " : "") << lw[i];
      os << "]";
    }
  }
  return os.str();
}

PoissonElement poissonZero(const Poisson& ctx) {
  PoissonElement e;
  e.ctx = ctx;
  return e;
}

PoissonElement poissonLetter(const Poisson& ctx, long id) {
  PoissonElement e = poissonZero(ctx);
  ctx->letterWord(id);  // validate
  e.addTerm({id}, Scalar::one(ctx->field()));
  return e;
}

PoissonElement fromLie(const Poisson& ctx, const FreeElement& lie) {
  if (lie.tag != Variety::Lie) throw ElementError("fromLie expects a Lie element");
  if (!sameField(lie.field, ctx->field()) || lie.nGenerators != ctx->generators())
    throw ElementError("mismatched context");
  PoissonElement e = poissonZero(ctx);
  for (const auto& [k, c] : lie.terms) {
    std::vector<int> w(k.code.begin(), k.code.end());
    e.addTerm({ctx->letterId(w)}, c);
  }
  return e;
}

PoissonElement poissonMultiply(const PoissonElement& a, const PoissonElement& b) {
  if (a.ctx != b.ctx) throw ElementError("mismatched Poisson context");
  PoissonElement out = poissonZero(a.ctx);
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      std::vector<long> w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.addTerm(w, ca * cb);
    }
  return out;
}

PoissonElement poissonBracket(const PoissonElement& a, const PoissonElement& b) {
  if (a.ctx != b.ctx) throw ElementError("mismatched Poisson context");
  const Poisson& ctx = a.ctx;
  PoissonElement out = poissonZero(ctx);
  // Leibniz in both arguments down to letter pairs:
  // {u, v} = sum_i u<i {u_i, v} u>i,  {x, v} = sum_j v<j {x, v_j} v>j
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      Scalar c = ca * cb;
      for (size_t i = 0; i < wa.size(); ++i)
        for (size_t j = 0; j < wb.size(); ++j)
          for (const auto& [letter, bc] : ctx->letterBracket(wa[i], wb[j])) {
            std::vector<long> w(wa.begin(), wa.begin() + (long)i);
            w.insert(w.end(), wb.begin(), wb.begin() + (long)j);
            w.push_back(letter);
            w.insert(w.end(), wb.begin() + (long)j + 1, wb.end());
            w.insert(w.end(), wa.begin() + (long)i + 1, wa.end());
            out.addTerm(w, c * bc);
          }
    }
  return out;
}

PoissonElement randomPoissonElement(const Poisson& ctx, int maxDegree,
                                    std::mt19937_64& rng, int maxTerms) {
  PoissonElement out = poissonZero(ctx);
  const Field& f = ctx->field();
  int nTerms = 1 + (int)(rng() % (unsigned)maxTerms);
  for (int t = 0; t < nTerms; ++t) {
    std::vector<long> w;
    int budget = 1 + (int)(rng() % (unsigned)maxDegree);
    while (budget > 0) {
      int ld = 1 + (int)(rng() % (unsigned)budget);
      auto basis = lyndonBasis(ctx->generators(), ld);
      w.push_back(ctx->letterId(basis[rng() % basis.size()].word));
      budget -= ld;
    }
    long a = (long)(rng() % 7) - 3;
    if (a == 0) a = 1;
    out.addTerm(w, Scalar::fromInt(f, a));
  }
  return out;
}

IdentityReport poissonIdentityCheck(int n, const Field& f, int trials, uint64_t seed) {
  Poisson ctx = makePoissonCtx(n, f);
  std::mt19937_64 rng(seed);
  std::vector<PoissonElement> pool;
  for (int t = 0; t < std::max(trials, 3); ++t)
    pool.push_back(randomPoissonElement(ctx, 3, rng));
  IdentityReport rep;
  auto fail = [&](const std::string& what) {
    rep.passed = false;
    rep.violation = what;
  };
  int budget = 200;
  for (size_t i = 0; i < pool.size() && rep.passed && budget > 0; ++i)
    for (size_t j = 0; j < pool.size() && rep.passed && budget > 0; ++j) {
      const auto& p = pool[i];
      const auto& q = pool[j];
      const auto& z = pool[(i + j) % pool.size()];
      --budget;
      if (!(poissonBracket(p, q) + poissonBracket(q, p)).isZero()) {
        fail("antisymmetry fails");
        break;
      }
      auto jac = poissonBracket(p, poissonBracket(q, z)) +
                 poissonBracket(q, poissonBracket(z, p)) +
                 poissonBracket(z, poissonBracket(p, q));
      if (!jac.isZero()) {
        fail("Jacobi fails");
        break;
      }
      auto lhs = poissonBracket(poissonMultiply(p, q), z);
      auto rhs = poissonMultiply(poissonBracket(p, z), q) +
                 poissonMultiply(p, poissonBracket(q, z));
      if (!(lhs == rhs)) {
        fail("Leibniz fails");
        break;
      }
      auto assoc = poissonMultiply(poissonMultiply(p, q), z) -
                   poissonMultiply(p, poissonMultiply(q, z));
      if (!assoc.isZero()) {
        fail("associativity fails");
        break;
      }
    }
  return rep;
}

}  // namespace freealg
