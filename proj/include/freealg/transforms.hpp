#pragma once

// Elementary transformations on generator tuples in Schreier varieties and
// the windowed annihilator kernel check.

#include "freealg/freeness.hpp"

namespace freealg {

struct GeneratorTuple {
  std::vector<FreeElement> items;  // shared tag/field, length >= 1
};

void validateTuple(const GeneratorTuple& t);

// y_i = sum_j m_ij x_j; m must be square and invertible
GeneratorTuple elemLinear(const GeneratorTuple& t, const ScalarMatrix& m);

// polynomial expression in the first n-1 tuple slots, checked by construction
struct FormalExpr {
  std::vector<std::pair<Scalar, MagmaWord>> terms;  // words over slot indices
};

// last entry becomes x_n + u(x_1..x_{n-1}); u referencing slot n is rejected
GeneratorTuple elemSubstitute(const GeneratorTuple& t, const FormalExpr& u);

struct AnnihilatorReport {
  std::vector<size_t> kernelDims;        // kernel dimension per domain degree
  std::vector<FreeElement> kernelBasis;  // kernel of p -> p*q on the window
  bool kernelIsSpanQ = false;
  std::vector<FreeElement> violators;    // kernel elements not proportional to q
};

// kernel of p -> p*q on the span of all basis monomials of degree <= d,
// checked against the scalar span of q (Schreier varieties with x^2 = 0)
AnnihilatorReport annihilatorCheck(const FreeElement& q, Variety v, int d);

}  // namespace freealg
