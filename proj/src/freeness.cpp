#include "freealg/freeness.hpp"

#include <algorithm>
#include <sstream>

namespace freealg {

namespace {

struct ColumnTable {
  std::map<MonoKey, long> ids;
  long id(const MonoKey& k) {
    auto [it, unused] = ids.emplace(k, (long)ids.size());
    return it->second;
  }
};

SparseRow elementRow(const FreeElement& e, ColumnTable& cols) {
  SparseRow row;
  for (const auto& [k, c] : e.terms) row.emplace(cols.id(k), c);
  return row;
}

void checkElements(const std::vector<FreeElement>& elements) {
  if (elements.size() < 2) throw ElementError("need at least two elements");
  for (const auto& e : elements) {
    if (e.tag != elements[0].tag || !sameField(e.field, elements[0].field) ||
        e.nGenerators != elements[0].nGenerators)
      throw ElementError("elements must share host tag, field, and generators");
  }
}

}  // namespace

FreenessReport freenessTest(const std::vector<FreeElement>& elements, Variety v,
                            int d, Scope scope, size_t monomialCap) {
  checkElements(elements);
  if (d < 1) throw ElementError("degree bound must be >= 1");
  const Field& f = elements[0].field;
  int nY = (int)elements.size();

  FreenessReport rep;
  rep.variety = v;
  rep.n = nY;
  rep.degree = d;
  rep.scope = scope;

  std::vector<SparseRow> rows;
  std::vector<MagmaWord> preimages;
  ColumnTable cols;
  size_t count = 0;
  for (int e = 1; e <= d; ++e) {
    const auto& basis = varietyBasis(v, nY, e, f);
    count += basis.size();
    if (count > monomialCap)
      throw ResourceCapError("monomial count " + std::to_string(count) +
                             " exceeds cap " + std::to_string(monomialCap));
    rep.dims.push_back(basis.size());
    for (const auto& b : basis) {
      rows.push_back(elementRow(evaluateMonomial(b.preimage, elements), cols));
      preimages.push_back(b.preimage);
    }
  }

  if (auto w = scopedDependence(f, rows, scope)) {
    rep.free = false;
    for (const auto& [idx, c] : *w) rep.witness.push_back({c, preimages[idx]});
  }
  return rep;
}

FreeElement witnessValue(const FreenessReport& rep,
                         const std::vector<FreeElement>& elements) {
  checkElements(elements);
  const Field& f = elements[0].field;
  FreeElement out = zeroElement(elements[0].tag, elements[0].nGenerators, f);
  for (const auto& t : rep.witness)
    out = out + evaluateMonomial(t.monomial, elements).scaled(liftScalar(t.coef, f));
  return out;
}

// ---------------------------------------------------------------------------
// frames

size_t GeneratorFrame::params() const {
  size_t r = 0;
  for (const auto& l : lists) r += l.size();
  return r;
}

std::pair<size_t, size_t> GeneratorFrame::paramSplit(size_t flat) const {
  for (size_t i = 0; i < lists.size(); ++i) {
    if (flat < lists[i].size()) return {i, flat};
    flat -= lists[i].size();
  }
  throw ElementError("parameter index out of range");
}

std::string GeneratorFrame::paramName(size_t flat) const {
  auto [i, j] = paramSplit(flat);
  return "z" + std::to_string(i + 1) + std::to_string(j + 1);
}

void validateFrame(const GeneratorFrame& frame) {
  if (frame.lists.size() < 2) throw ElementError("frame needs n >= 2");
  for (const auto& list : frame.lists) {
    if (list.empty()) throw ElementError("empty generator list in frame");
    for (const auto& e : list)
      if (e.tag != frame.hostTag || !sameField(e.field, frame.field) ||
          e.nGenerators != frame.hostN)
        throw ElementError("frame elements must live in the host algebra");
  }
}

// ---------------------------------------------------------------------------
// z-polynomials

ZPoly zpZero(const Field& f, size_t r) {
  ZPoly p;
  p.r = r;
  p.field = f;
  return p;
}

ZPoly zpConst(const Field& f, size_t r, const Scalar& c) {
  ZPoly p = zpZero(f, r);
  if (!c.isZero()) p.terms.emplace(Exponents(r, 0), c);
  return p;
}

ZPoly zpVar(const Field& f, size_t r, size_t idx) {
  ZPoly p = zpZero(f, r);
  Exponents e(r, 0);
  e[idx] = 1;
  p.terms.emplace(std::move(e), Scalar::one(f));
  return p;
}

ZPoly zpAdd(const ZPoly& a, const ZPoly& b) {
  ZPoly out = a;
  for (const auto& [e, c] : b.terms) {
    auto it = out.terms.find(e);
    if (it == out.terms.end()) {
      out.terms.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second.isZero()) out.terms.erase(it);
    }
  }
  return out;
}

ZPoly zpMul(const ZPoly& a, const ZPoly& b) {
  ZPoly out = zpZero(a.field, a.r);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Exponents e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      Scalar c = ca * cb;
      auto it = out.terms.find(e);
      if (it == out.terms.end()) {
        out.terms.emplace(std::move(e), c);
      } else {
        it->second = it->second + c;
        if (it->second.isZero()) out.terms.erase(it);
      }
    }
  return out;
}

ZPoly zpScale(const ZPoly& a, const Scalar& c) {
  ZPoly out = zpZero(a.field, a.r);
  if (c.isZero()) return out;
  for (const auto& [e, v] : a.terms) out.terms.emplace(e, v * c);
  return out;
}

Scalar zpEval(const ZPoly& a, const std::vector<Scalar>& point) {
  Scalar out = Scalar::zero(a.field);
  for (const auto& [e, c] : a.terms) {
    Scalar m = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) m = m * point[i];
    out = out + m;
  }
  return out;
}

std::string zpString(const ZPoly& a, const GeneratorFrame& frame) {
  if (a.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    bool hasVars = false;
    for (unsigned k : e) hasVars = hasVars || k > 0;
    if (!hasVars) {
      os << c.str();
      continue;
    }
    if (!c.isOne()) os << "(" << c.str() << ")*";
    bool firstVar = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!firstVar) os << "*";
      firstVar = false;
      os << frame.paramName(i);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parametric matrix

namespace {

// element with z-polynomial coefficients over the host basis
using PElem = std::map<MonoKey, ZPoly>;

void pAdd(PElem& into, const MonoKey& k, const ZPoly& p) {
  if (p.isZero()) return;
  auto it = into.find(k);
  if (it == into.end()) {
    into.emplace(k, p);
  } else {
    it->second = zpAdd(it->second, p);
    if (it->second.isZero()) into.erase(it);
  }
}

FreeElement hostMonomial(const GeneratorFrame& frame, const MonoKey& k) {
  FreeElement e = zeroElement(frame.hostTag, frame.hostN, frame.field);
  e.addTerm(k, Scalar::one(frame.field));
  return e;
}

PElem pEval(const MagmaWord& w, const GeneratorFrame& frame) {
  size_t r = frame.params();
  if (w.isLeaf()) {
    size_t i = (size_t)w.generator() - 1;
    if (i >= frame.lists.size()) throw ElementError("monomial uses unknown generator");
    size_t flatBase = 0;
    for (size_t k = 0; k < i; ++k) flatBase += frame.lists[k].size();
    PElem out;
    for (size_t j = 0; j < frame.lists[i].size(); ++j) {
      ZPoly z = zpVar(frame.field, r, flatBase + j);
      for (const auto& [k, c] : frame.lists[i][j].terms)
        pAdd(out, k, zpScale(z, c));
    }
    return out;
  }
  PElem l = pEval(w.left(), frame);
  PElem rgt = pEval(w.right(), frame);
  PElem out;
  for (const auto& [ka, pa] : l)
    for (const auto& [kb, pb] : rgt) {
      FreeElement prod = multiply(hostMonomial(frame, ka), hostMonomial(frame, kb));
      ZPoly pab = zpMul(pa, pb);
      for (const auto& [kc, c] : prod.terms) pAdd(out, kc, zpScale(pab, c));
    }
  return out;
}

// all evaluations of w with every choice of a_{ij} per leaf occurrence
void allChoiceEvaluations(const MagmaWord& w, const GeneratorFrame& frame,
                          std::vector<FreeElement>& out) {
  if (w.isLeaf()) {
    out = frame.lists[(size_t)w.generator() - 1];
    return;
  }
  std::vector<FreeElement> ls, rs;
  allChoiceEvaluations(w.left(), frame, ls);
  allChoiceEvaluations(w.right(), frame, rs);
  out.clear();
  for (const auto& l : ls)
    for (const auto& r : rs) out.push_back(multiply(l, r));
}

}  // namespace

PolyMatrix parametricMatrix(const GeneratorFrame& frame,
                            const std::vector<MagmaWord>& monomials, int d) {
  validateFrame(frame);
  for (const auto& m : monomials)
    if (m.degree() > d) throw ElementError("monomial exceeds the degree bound");

  PolyMatrix P;
  P.frame = frame;
  P.monomials = monomials;

  // e-basis: greedy independent subset of all evaluations of degree <= d
  // monomials at the a_{ij} choices
  int nY = (int)frame.lists.size();
  ColumnTable cols;
  DependenceReducer basisScan(frame.field);
  for (int e = 1; e <= d; ++e)
    for (const auto& w : enumerateWords(nY, e)) {
      std::vector<FreeElement> evals;
      allChoiceEvaluations(w, frame, evals);
      for (const auto& ev : evals) {
        if (ev.isZero()) continue;
        size_t before = basisScan.rank();
        basisScan.addRow(elementRow(ev, cols));
        if (basisScan.rank() > before) P.eBasis.push_back(ev);
      }
    }

  size_t s = P.eBasis.size();
  P.wholeSpaceDependent = monomials.size() > s;

  // coordinate extractor: reduce against the fixed e-basis rows
  DependenceReducer coord(frame.field);
  for (const auto& ev : P.eBasis) coord.addRow(elementRow(ev, cols));

  size_t r = frame.params();
  for (const auto& m : monomials) {
    PElem pm = pEval(m, frame);
    // regroup by z-monomial: each z-coefficient vector lies in span(eBasis)
    std::map<Exponents, std::map<MonoKey, Scalar>, GrlexLess> slices;
    for (const auto& [k, zp] : pm)
      for (const auto& [e, c] : zp.terms) slices[e].emplace(k, c);
    std::vector<ZPoly> row(s, zpZero(frame.field, r));
    for (const auto& [e, vec] : slices) {
      SparseRow sr;
      for (const auto& [k, c] : vec) sr.emplace(cols.id(k), c);
      auto w = coord.addRow(std::move(sr));
      if (!w) throw ElementError("evaluation escapes the e-basis span");
      Scalar self = w->rbegin()->second;  // coefficient of the new row
      for (const auto& [idx, c] : *w) {
        if (idx >= s) continue;
        ZPoly zmono = zpZero(frame.field, r);
        zmono.terms.emplace(e, Scalar::one(frame.field));
        row[idx] = zpAdd(row[idx], zpScale(zmono, -(c / self)));
      }
    }
    P.entries.push_back(std::move(row));
  }
  return P;
}

namespace {

ZPoly zpDeterminant(const PolyMatrix& P, const std::vector<size_t>& ri,
                    const std::vector<size_t>& ci) {
  size_t m = ri.size();
  const Field& f = P.frame.field;
  size_t r = P.frame.params();
  if (m == 1) return P.entries[ri[0]][ci[0]];
  ZPoly det = zpZero(f, r);
  Scalar sign = Scalar::one(f);
  for (size_t j = 0; j < m; ++j) {
    const ZPoly& a = P.entries[ri[0]][ci[j]];
    if (!a.isZero()) {
      std::vector<size_t> subR(ri.begin() + 1, ri.end());
      std::vector<size_t> subC;
      for (size_t k = 0; k < m; ++k)
        if (k != j) subC.push_back(ci[k]);
      det = zpAdd(det, zpScale(zpMul(a, zpDeterminant(P, subR, subC)), sign));
    }
    sign = -sign;
  }
  return det;
}

bool nextSubset(std::vector<size_t>& idx, size_t limit) {
  size_t m = idx.size();
  for (size_t i = m; i-- > 0;) {
    // rightmost position with room to move up
    if (idx[i] < limit - (m - i)) {
      ++idx[i];
      for (size_t k = i + 1; k < m; ++k) idx[k] = idx[k - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<ZPoly> minors(const PolyMatrix& P, size_t m, bool firstNonzeroOnly) {
  if (m < 1 || m > P.monomials.size()) throw ElementError("invalid minor size");
  std::vector<ZPoly> out;
  size_t s = P.eBasis.size();
  if (m > s) return out;  // locus is everything; the flag tells the story
  std::vector<size_t> ri(m), ci(m);
  for (size_t i = 0; i < m; ++i) ri[i] = i;
  do {
    for (size_t i = 0; i < m; ++i) ci[i] = i;
    do {
      ZPoly det = zpDeterminant(P, ri, ci);
      out.push_back(det);
      if (firstNonzeroOnly && !det.isZero()) return out;
    } while (nextSubset(ci, s));
  } while (nextSubset(ri, P.monomials.size()));
  return out;
}

// ---------------------------------------------------------------------------
// specialization search

std::vector<FreeElement> specializeFrame(const GeneratorFrame& frame,
                                         const std::vector<long>& z) {
  validateFrame(frame);
  if (z.size() != frame.params()) throw ElementError("wrong point dimension");
  std::vector<FreeElement> out;
  size_t flat = 0;
  for (const auto& list : frame.lists) {
    FreeElement a = zeroElement(frame.hostTag, frame.hostN, frame.field);
    for (const auto& e : list)
      a = a + e.scaled(Scalar::fromInt(frame.field, z[flat++]));
    out.push_back(a);
  }
  return out;
}

SearchResult specializationSearch(const GeneratorFrame& frame, Variety v, int p,
                                  long budget, uint64_t seed, size_t monomialCap) {
  validateFrame(frame);
  SearchResult res;
  std::mt19937_64 rng(seed);
  size_t r = frame.params();
  long radius = 1;
  long growEvery = std::max(1L, budget / 4);
  for (long trial = 1; trial <= budget; ++trial) {
    std::vector<long> z(r);
    for (size_t i = 0; i < r; ++i)
      z[i] = (long)(rng() % (unsigned long)(2 * radius + 1)) - radius;
    auto elems = specializeFrame(frame, z);
    bool anyZero = false;
    for (const auto& e : elems) anyZero = anyZero || e.isZero();
    if (!anyZero) {
      FreenessReport rep = freenessTest(elems, v, p, Scope::FullField, monomialCap);
      if (rep.free) {
        res.found = true;
        res.point = z;
        res.trials = trial;
        rep.seed = seed;
        rep.trials = trial;
        res.certificate = rep;
        return res;
      }
    }
    if (trial % growEvery == 0) radius *= 2;
  }
  res.trials = budget;
  return res;
}

// ---------------------------------------------------------------------------
// MLM

namespace {

// layered Poisson reduction: the instance is a Lie tuple; after the Lie layer
// comes associative freeness of the Lyndon-letter forms of its low-degree
// Lie hull
std::vector<FreeElement> letterForms(const std::vector<FreeElement>& instance,
                                     int d) {
  const Field& f = instance[0].field;
  int nY = (int)instance.size();
  std::vector<FreeElement> evals;
  for (int e = 1; e <= std::min(d, 2); ++e)
    for (const auto& b : varietyBasis(Variety::Lie, nY, e, f)) {
      FreeElement ev = evaluateMonomial(b.preimage, instance);
      if (!ev.isZero()) evals.push_back(ev);
    }
  // alphabet: the Lyndon monomials appearing across the evaluations
  std::map<MonoKey, int> letters;
  for (const auto& ev : evals)
    for (const auto& [k, c] : ev.terms) letters.emplace(k, 0);
  int next = 1;
  for (auto& [k, id] : letters) id = next++;
  std::vector<FreeElement> out;
  for (const auto& ev : evals) {
    FreeElement form = zeroElement(Variety::Associative, (int)letters.size(), f);
    for (const auto& [k, c] : ev.terms) form.addTerm(wordKey({letters[k]}), c);
    out.push_back(form);
  }
  return out;
}

}  // namespace

// A full-field dependence below the bound while the base scope stays free can
// be a truncation artifact: the matching base dependence may sit just above
// the bound.  Look a little deeper before claiming a counterexample; an
// explicit base dependence at any depth refutes the K-freeness premise.
bool screenedCounterexample(const std::vector<FreeElement>& instance, Variety v,
                            int d, size_t cap, FreenessReport& base) {
  for (int e = d + 1; e <= d + 2; ++e) {
    try {
      auto deeper = freenessTest(instance, v, e, Scope::BaseSubfield, cap);
      if (!deeper.free) {
        base = deeper;
        return false;
      }
    } catch (const ResourceCapError&) {
      break;  // cannot look deeper; keep the verdict from the checked window
    }
  }
  return true;
}

MlmReport mlmCheck(Variety v, const std::vector<FreeElement>& instance, int d,
                   size_t monomialCap) {
  checkElements(instance);
  MlmReport rep;
  rep.variety = v;
  rep.degree = d;
  if (v == Variety::Poisson) {
    if (instance[0].tag != Variety::Lie)
      throw ElementError("Poisson instances are given as Lie elements");
    rep.base = freenessTest(instance, Variety::Lie, d, Scope::BaseSubfield, monomialCap);
    rep.full = freenessTest(instance, Variety::Lie, d, Scope::FullField, monomialCap);
    rep.counterexample =
        rep.base.free && !rep.full.free &&
        screenedCounterexample(instance, Variety::Lie, d, monomialCap, rep.base);
    if (rep.base.free && rep.full.free) {
      auto forms = letterForms(instance, d);
      if (forms.size() >= 2) {
        rep.layered = true;
        rep.base2 = freenessTest(forms, Variety::Associative, 2, Scope::BaseSubfield,
                                 monomialCap);
        rep.full2 = freenessTest(forms, Variety::Associative, 2, Scope::FullField,
                                 monomialCap);
        rep.counterexample =
            rep.counterexample ||
            (rep.base2.free && !rep.full2.free &&
             screenedCounterexample(forms, Variety::Associative, 2, monomialCap,
                                    rep.base2));
      }
    }
  } else {
    if (instance[0].tag != v)
      throw ElementError("instance tag must match the tested variety");
    rep.base = freenessTest(instance, v, d, Scope::BaseSubfield, monomialCap);
    rep.full = freenessTest(instance, v, d, Scope::FullField, monomialCap);
    rep.counterexample =
        rep.base.free && !rep.full.free &&
        screenedCounterexample(instance, v, d, monomialCap, rep.base);
  }
  rep.verdict = rep.counterexample ? "mlm-counterexample" : "mlm-consistent";
  return rep;
}

}  // namespace freealg
