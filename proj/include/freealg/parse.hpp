#pragma once

// Element text parsing (scalar-weighted sums of s-expression words) and the
// machine-readable report serializers.

#include "freealg/freeness.hpp"

namespace freealg {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& what, size_t at)
      : std::runtime_error(what + " (at position " + std::to_string(at) + ")"),
        pos(at) {}
};

// grammar: term ('+' term)*; term = [scalar-literal] sexpr;
// sexpr = '(g N)' | '(* sexpr sexpr)' | '(unit)'
FreeElement parseElement(const std::string& text, Variety v, int n, const Field& f);

std::string freenessReportJson(const FreenessReport& rep);
std::string mlmReportJson(const MlmReport& rep);

}  // namespace freealg
