#include "freealg/transforms.hpp"

namespace freealg {

void validateTuple(const GeneratorTuple& t) {
  if (t.items.empty()) throw ElementError("tuple must be nonempty");
  for (const auto& e : t.items)
    if (e.tag != t.items[0].tag || !sameField(e.field, t.items[0].field) ||
        e.nGenerators != t.items[0].nGenerators)
      throw ElementError("tuple entries must share host tag, field, generators");
}

GeneratorTuple elemLinear(const GeneratorTuple& t, const ScalarMatrix& m) {
  validateTuple(t);
  size_t n = t.items.size();
  if (m.rows != n || m.cols != n) throw ElementError("matrix size must match tuple");
  if (determinant(m.field, m.data, n).isZero())
    throw ElementError("singular matrix rejected");
  GeneratorTuple out;
  for (size_t i = 0; i < n; ++i) {
    FreeElement y = zeroElement(t.items[0].tag, t.items[0].nGenerators, t.items[0].field);
    for (size_t j = 0; j < n; ++j) y = y + t.items[j].scaled(m.at(i, j));
    out.items.push_back(y);
  }
  return out;
}

GeneratorTuple elemSubstitute(const GeneratorTuple& t, const FormalExpr& u) {
  validateTuple(t);
  size_t n = t.items.size();
  for (const auto& [c, w] : u.terms)
    if (w.maxGenerator() >= (int)n)
      throw ElementError("substitution expression may not reference the last slot");
  GeneratorTuple out = t;
  FreeElement add = zeroElement(t.items[0].tag, t.items[0].nGenerators, t.items[0].field);
  for (const auto& [c, w] : u.terms)
    add = add + evaluateMonomial(w, t.items).scaled(c);
  out.items[n - 1] = out.items[n - 1] + add;
  return out;
}

AnnihilatorReport annihilatorCheck(const FreeElement& q, Variety v, int d) {
  if (v != Variety::Lie && v != Variety::Anticommutative)
    throw ElementError("annihilator check applies to Lie and Anticommutative hosts");
  if (q.tag != v) throw ElementError("q must live in the checked host");
  if (q.isZero()) throw ElementError("q must be nonzero");
  if (d < q.degree()) throw ElementError("window must include the degree of q");
  const Field& f = q.field;
  int n = q.nGenerators;

  // domain monomials and their images p_j * q
  std::vector<FreeElement> domain, images;
  std::vector<int> degrees;
  for (int e = 1; e <= d; ++e)
    for (const auto& b : varietyBasis(v, n, e, f)) {
      domain.push_back(b.payload);
      images.push_back(multiply(b.payload, q));
      degrees.push_back(e);
    }

  std::map<MonoKey, size_t> rowsIdx;
  for (const auto& im : images)
    for (const auto& [k, c] : im.terms) rowsIdx.emplace(k, 0);
  size_t next = 0;
  for (auto& [k, idx] : rowsIdx) idx = next++;

  auto kernelOf = [&](const std::vector<size_t>& colPick) {
    ScalarMatrix m = ScalarMatrix::make(f, std::max<size_t>(rowsIdx.size(), 1),
                                        colPick.size());
    for (size_t r = 0; r < m.rows; ++r)
      for (size_t c = 0; c < m.cols; ++c) m.at(r, c) = Scalar::zero(f);
    for (size_t c = 0; c < colPick.size(); ++c)
      for (const auto& [k, v2] : images[colPick[c]].terms)
        m.at(rowsIdx.at(k), c) = v2;
    return rankAndKernel(m).kernel;
  };

  AnnihilatorReport rep;
  std::vector<size_t> all(domain.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  for (int e = 1; e <= d; ++e) {
    std::vector<size_t> pick;
    for (size_t i = 0; i < all.size(); ++i)
      if (degrees[i] == e) pick.push_back(i);
    rep.kernelDims.push_back(pick.empty() ? 0 : kernelOf(pick).size());
  }

  auto kernel = kernelOf(all);
  for (const auto& vec : kernel) {
    FreeElement p = zeroElement(v, n, f);
    for (size_t i = 0; i < vec.size(); ++i) p = p + domain[i].scaled(vec[i]);
    rep.kernelBasis.push_back(p);
  }

  // kernel == span{q}: dimension one and the basis vector proportional to q
  rep.kernelIsSpanQ = rep.kernelBasis.size() == 1;
  for (const auto& p : rep.kernelBasis) {
    const auto& [k0, c0] = *q.terms.begin();
    auto it = p.terms.find(k0);
    bool prop = it != p.terms.end();
    if (prop) {
      Scalar lambda = it->second / c0;
      prop = p == q.scaled(lambda);
    }
    if (!prop) {
      rep.kernelIsSpanQ = false;
      rep.violators.push_back(p);
    }
  }
  return rep;
}

}  // namespace freealg
