#include "freealg/parse.hpp"

#include <json.hpp>

namespace freealg {

namespace {

size_t skipWs(const std::string& s, size_t i) {
  while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  return i;
}

struct SExpr {
  bool unit = false;
  MagmaWord word;  // valid when !unit
};

SExpr parseSexpr(const std::string& s, size_t& i) {
  i = skipWs(s, i);
  if (i >= s.size() || s[i] != '(') throw ParseError("expected '('", i);
  size_t open = i++;
  i = skipWs(s, i);
  if (i >= s.size()) throw ParseError("unbalanced parenthesis", open);
  if (s[i] == 'g') {
    ++i;
    i = skipWs(s, i);
    size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (start == i) throw ParseError("expected generator index", i);
    long g = std::stol(s.substr(start, i - start));
    i = skipWs(s, i);
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
    ++i;
    if (g < 1) throw ParseError("generator index must be >= 1", start);
    return {false, MagmaWord::leaf((int)g)};
  }
  if (s[i] == '*') {
    ++i;
    SExpr l = parseSexpr(s, i);
    SExpr r = parseSexpr(s, i);
    if (l.unit || r.unit) throw ParseError("unit cannot appear under '*'", open);
    i = skipWs(s, i);
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
    ++i;
    return {false, MagmaWord::pair(l.word, r.word)};
  }
  if (s.compare(i, 4, "unit") == 0) {
    i = skipWs(s, i + 4);
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
    ++i;
    SExpr e;
    e.unit = true;
    return e;
  }
  throw ParseError("expected 'g', '*', or 'unit'", i);
}

// index where the word part of the term starts: the first '(' followed by a
// word head; everything before it is the scalar literal
size_t wordStart(const std::string& term) {
  int depth = 0;
  for (size_t i = 0; i < term.size(); ++i) {
    char c = term[i];
    if (c == '(') {
      size_t j = skipWs(term, i + 1);
      if (depth == 0 && j < term.size() &&
          (term[j] == 'g' || term[j] == '*' || term.compare(j, 4, "unit") == 0))
        return i;
      ++depth;
    } else if (c == ')') {
      --depth;
    }
  }
  return std::string::npos;
}

}  // namespace

FreeElement parseElement(const std::string& text, Variety v, int n, const Field& f) {
  FreeElement out = zeroElement(v, n, f);
  // split on top-level '+'
  std::vector<std::pair<size_t, std::string>> parts;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == '+' && depth == 0)) {
      parts.emplace_back(start, text.substr(start, i - start));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parenthesis", text.size());

  bool any = false;
  for (auto& [off, term] : parts) {
    size_t i = skipWs(term, 0);
    if (i == term.size()) throw ParseError("empty term", off);
    if (term[i] == '0' && skipWs(term, i + 1) == term.size()) {
      any = true;  // the zero element prints as "0"
      continue;
    }
    size_t ws = wordStart(term);
    if (ws == std::string::npos) throw ParseError("term has no word", off + i);
    std::string scalarText = term.substr(0, ws);
    Scalar c = Scalar::one(f);
    if (skipWs(scalarText, 0) != scalarText.size()) {
      try {
        c = parseScalar(f, scalarText);
      } catch (const FieldError& e) {
        throw ParseError(std::string("malformed scalar: ") + e.what(), off);
      }
    }
    size_t pos = ws;
    SExpr sx = parseSexpr(term, pos);
    if (skipWs(term, pos) != term.size()) throw ParseError("trailing input", off + pos);

    if (sx.unit) {
      out = out + unitElement(v, n, f).scaled(c);
    } else {
      if (sx.word.maxGenerator() > n)
        throw ParseError("unknown generator index", off + ws);
      if (v == Variety::Associative || v == Variety::SpecialJordan) {
        // words denote associative-representation monomials directly
        FreeElement m = zeroElement(v, n, f);
        m.addTerm(wordKey(sx.word.leaves()), c);
        out = out + m;
      } else {
        out = out + normalForm(sx.word, v, n, f).scaled(c);
      }
    }
    any = true;
  }
  if (!any) throw ParseError("empty element text", 0);
  return out;
}

// ---------------------------------------------------------------------------
// reports

namespace {

nlohmann::json freenessJson(const FreenessReport& rep) {
  nlohmann::json j;
  j["variety"] = varietyName(rep.variety);
  j["n"] = rep.n;
  j["degree"] = rep.degree;
  j["scope"] = scopeName(rep.scope);
  j["verdict"] = rep.free ? "free-up-to-" + std::to_string(rep.degree) : "dependent";
  j["dims"] = rep.dims;
  if (rep.witness.empty()) {
    j["witness"] = nullptr;
  } else {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& t : rep.witness)
      w.push_back({{"coef", t.coef.str()}, {"monomial", t.monomial.sexpr()}});
    j["witness"] = w;
  }
  j["seed"] = rep.seed;
  j["trials"] = rep.trials;
  return j;
}

}  // namespace

std::string freenessReportJson(const FreenessReport& rep) {
  return freenessJson(rep).dump(2);
}

std::string mlmReportJson(const MlmReport& rep) {
  nlohmann::json j;
  j["variety"] = varietyName(rep.variety);
  j["degree"] = rep.degree;
  j["verdict"] = rep.verdict;
  j["base"] = freenessJson(rep.base);
  j["full"] = freenessJson(rep.full);
  if (rep.layered) {
    j["letterBase"] = freenessJson(rep.base2);
    j["letterFull"] = freenessJson(rep.full2);
  }
  return j.dump(2);
}

}  // namespace freealg
