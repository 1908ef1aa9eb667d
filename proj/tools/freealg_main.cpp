// freealg: freeness laboratory for free algebras in homogeneous varieties.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "freealg/parse.hpp"
#include "freealg/transforms.hpp"

using namespace freealg;
using nlohmann::json;

namespace {

struct Options {
  std::string field = "Q";
  std::string variety = "all";
  int n = 2;
  int degree = 4;
  std::string scope = "full-field";
  uint64_t seed = 1;
  long budget = 100;
  std::string format = "text";
  std::string output;
  size_t cap = 20000;
  std::vector<std::string> elements;
  std::string input;
  std::string frame;
  std::string script;
  std::string demo;
  size_t minorSize = 0;
  std::string mode = "all";
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw ParseError("cannot open output file " + opt.output, 0);
  out << text << "\n";
}

std::vector<std::string> readLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file " + path, 0);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<FreeElement> loadElements(const Options& opt, Variety host,
                                      const Field& f) {
  std::vector<std::string> texts = opt.elements;
  if (!opt.input.empty())
    for (auto& l : readLines(opt.input)) texts.push_back(l);
  std::vector<FreeElement> out;
  for (const auto& t : texts) out.push_back(parseElement(t, host, opt.n, f));
  if (out.size() < 2) throw ParseError("need at least two elements", 0);
  return out;
}

GeneratorFrame loadFrame(const Options& opt, Variety host, const Field& f) {
  GeneratorFrame fr;
  fr.hostTag = host;
  fr.hostN = opt.n;
  fr.field = f;
  for (const auto& line : readLines(opt.frame)) {
    std::vector<FreeElement> list;
    size_t start = 0;
    while (start <= line.size()) {
      size_t semi = line.find(';', start);
      std::string part = line.substr(start, semi == std::string::npos
                                                ? std::string::npos
                                                : semi - start);
      if (part.find_first_not_of(" \t\r") != std::string::npos)
        list.push_back(parseElement(part, host, opt.n, f));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    if (!list.empty()) fr.lists.push_back(std::move(list));
  }
  validateFrame(fr);
  return fr;
}

std::string freenessText(const FreenessReport& rep) {
  std::ostringstream os;
  os << "variety=" << varietyName(rep.variety) << " scope=" << scopeName(rep.scope)
     << " dims=";
  for (size_t i = 0; i < rep.dims.size(); ++i) os << (i ? "," : "") << rep.dims[i];
  os << "\nverdict: "
     << (rep.free ? "free-up-to-" + std::to_string(rep.degree) : "dependent");
  if (!rep.free) {
    os << "\nwitness:";
    for (const auto& t : rep.witness)
      os << " + " << t.coef.str() << " " << t.monomial.sexpr();
  }
  return os.str();
}

// scale so the last witness coefficient is -1 (witnesses are projective)
void normalizeWitness(FreenessReport& rep, const Field& f) {
  if (rep.witness.empty()) return;
  Scalar last = liftScalar(rep.witness.back().coef, f);
  Scalar s = -last.inv();
  for (auto& t : rep.witness) t.coef = liftScalar(t.coef, f) * s;
}

// ---------------------------------------------------------------------------
// subcommands

int runBasis(const Options& opt) {
  Field f = parseFieldSpec(opt.field);
  Variety v = parseVariety(opt.variety);
  const auto& basis = varietyBasis(v, opt.n, opt.degree, f);
  if (opt.format == "json") {
    json j;
    j["variety"] = varietyName(v);
    j["n"] = opt.n;
    j["degree"] = opt.degree;
    j["dim"] = basis.size();
    json ms = json::array();
    for (const auto& b : basis)
      ms.push_back({{"preimage", b.preimage.sexpr()}, {"element", b.payload.str()}});
    j["monomials"] = ms;
    emit(opt, j.dump(2));
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "index,preimage,element";
    for (size_t i = 0; i < basis.size(); ++i)
      os << "\n" << i << ",\"" << basis[i].preimage.sexpr() << "\",\""
         << basis[i].payload.str() << "\"";
    emit(opt, os.str());
  } else {
    std::ostringstream os;
    os << "variety=" << varietyName(v) << " n=" << opt.n << " degree=" << opt.degree
       << " dim=" << basis.size();
    for (const auto& b : basis) os << "\n" << b.preimage.sexpr();
    emit(opt, os.str());
  }
  return 0;
}

int runDims(const Options& opt, bool allVarieties) {
  Field f = parseFieldSpec(opt.field);
  std::vector<Variety> vs;
  if (allVarieties) {
    vs = {Variety::All, Variety::Associative, Variety::Commutative,
          Variety::Anticommutative, Variety::Lie, Variety::SpecialJordan,
          Variety::TrivialMult};
  } else {
    vs = {parseVariety(opt.variety)};
  }
  std::ostringstream os;
  json rows = json::array();
  os << "variety,degree,dim";
  for (Variety v : vs)
    for (int d = 1; d <= opt.degree; ++d) {
      size_t dim = varietyBasis(v, opt.n, d, f).size();
      os << "\n" << varietyName(v) << "," << d << "," << dim;
      rows.push_back({{"variety", varietyName(v)}, {"degree", d}, {"dim", dim}});
    }
  emit(opt, opt.format == "json" ? rows.dump(2) : os.str());
  return 0;
}

int runFreeness(const Options& opt) {
  Field f = parseFieldSpec(opt.field);
  Variety v = parseVariety(opt.variety);
  auto elems = loadElements(opt, v, f);
  auto rep = freenessTest(elems, v, opt.degree, parseScope(opt.scope), opt.cap);
  emit(opt, opt.format == "json" ? freenessReportJson(rep) : freenessText(rep));
  return 0;
}

int runMinors(const Options& opt) {
  Field f = parseFieldSpec(opt.field);
  Variety v = parseVariety(opt.variety);
  auto fr = loadFrame(opt, v, f);
  std::vector<MagmaWord> monos;
  for (int e = 1; e <= opt.degree; ++e)
    for (const auto& b : varietyBasis(v, (int)fr.lists.size(), e, f))
      monos.push_back(b.preimage);
  auto P = parametricMatrix(fr, monos, opt.degree);
  size_t m = opt.minorSize ? opt.minorSize : monos.size();
  auto ms = minors(P, m, opt.mode == "first");
  if (opt.format == "json") {
    json j;
    j["rows"] = monos.size();
    j["columns"] = P.eBasis.size();
    j["wholeSpaceDependent"] = P.wholeSpaceDependent;
    j["m"] = m;
    json list = json::array();
    for (const auto& z : ms) list.push_back(zpString(z, fr));
    j["minors"] = list;
    emit(opt, j.dump(2));
  } else {
    std::ostringstream os;
    os << "rows=" << monos.size() << " columns=" << P.eBasis.size()
       << " wholeSpaceDependent=" << (P.wholeSpaceDependent ? "yes" : "no")
       << " m=" << m;
    for (const auto& z : ms) os << "\n" << zpString(z, fr);
    emit(opt, os.str());
  }
  return 0;
}

int runSpecialize(const Options& opt) {
  Field f = parseFieldSpec(opt.field);
  Variety v = parseVariety(opt.variety);
  auto fr = loadFrame(opt, v, f);
  auto res = specializationSearch(fr, v, opt.degree, opt.budget, opt.seed, opt.cap);
  if (opt.format == "json") {
    json j;
    j["found"] = res.found;
    j["trials"] = res.trials;
    j["seed"] = opt.seed;
    if (res.found) {
      json pt = json::array();
      for (size_t i = 0; i < res.point.size(); ++i)
        pt.push_back({{"name", fr.paramName(i)}, {"value", res.point[i]}});
      j["point"] = pt;
      j["certificate"] = json::parse(freenessReportJson(res.certificate));
    }
    emit(opt, j.dump(2));
  } else {
    std::ostringstream os;
    if (res.found) {
      os << "found after " << res.trials << " trials:";
      for (size_t i = 0; i < res.point.size(); ++i)
        os << " " << fr.paramName(i) << "=" << res.point[i];
      os << "\n" << freenessText(res.certificate);
    } else {
      os << "exhausted after " << res.trials << " trials";
    }
    emit(opt, os.str());
  }
  return 0;
}

int runMlmCheck(const Options& opt) {
  Field f = parseFieldSpec(opt.field);
  Variety v = parseVariety(opt.variety);
  Variety host = v == Variety::Poisson ? Variety::Lie : v;
  auto elems = loadElements(opt, host, f);
  auto rep = mlmCheck(v, elems, opt.degree, opt.cap);
  if (opt.format == "json") {
    emit(opt, mlmReportJson(rep));
  } else {
    std::ostringstream os;
    os << "verdict: " << rep.verdict << "\nbase: " << freenessText(rep.base)
       << "\nfull: " << freenessText(rep.full);
    if (rep.layered)
      os << "\nletter-base: " << freenessText(rep.base2)
         << "\nletter-full: " << freenessText(rep.full2);
    emit(opt, os.str());
  }
  return 0;
}

int runTransform(const Options& opt) {
  Field f = parseFieldSpec(opt.field);
  Variety v = parseVariety(opt.variety);
  if (opt.input.empty()) throw ParseError("transform needs --input tuple file", 0);
  if (opt.script.empty()) throw ParseError("transform needs --script file", 0);
  GeneratorTuple tup;
  for (const auto& l : readLines(opt.input))
    tup.items.push_back(parseElement(l, v, opt.n, f));
  validateTuple(tup);
  Scope sc = parseScope(opt.scope);

  auto before = freenessTest(tup.items, v, opt.degree, sc, opt.cap);

  for (const auto& line : readLines(opt.script)) {
    std::istringstream is(line);
    std::string cmd;
    is >> cmd;
    std::string rest;
    std::getline(is, rest);
    if (cmd == "linear") {
      size_t nT = tup.items.size();
      std::vector<std::string> toks;
      std::istringstream rs(rest);
      std::string tok;
      while (rs >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (!tok.empty()) toks.push_back(tok);
      }
      if (toks.size() != nT * nT)
        throw ParseError("linear move needs " + std::to_string(nT * nT) +
                             " matrix entries",
                         0);
      ScalarMatrix m = ScalarMatrix::make(f, nT, nT);
      for (size_t i = 0; i < nT * nT; ++i) m.data[i] = parseScalar(f, toks[i]);
      tup = elemLinear(tup, m);
    } else if (cmd == "subst") {
      // the expression is read over the tuple slots (first n-1 only)
      FreeElement u = parseElement(rest, Variety::All, (int)tup.items.size(), f);
      FormalExpr ex;
      for (const auto& [k, c] : u.terms)
        ex.terms.push_back({c, MagmaWord::decode(k.code)});
      tup = elemSubstitute(tup, ex);
    } else {
      throw ParseError("unknown move '" + cmd + "'", 0);
    }
  }

  auto after = freenessTest(tup.items, v, opt.degree, sc, opt.cap);

  if (opt.format == "json") {
    json j;
    json items = json::array();
    for (const auto& e : tup.items) items.push_back(e.str());
    j["tuple"] = items;
    j["before"] = json::parse(freenessReportJson(before));
    j["after"] = json::parse(freenessReportJson(after));
    emit(opt, j.dump(2));
  } else {
    std::ostringstream os;
    os << "tuple:";
    for (const auto& e : tup.items) os << "\n  " << e.str();
    os << "\nbefore: " << (before.free ? "free" : "dependent")
       << "\nafter: " << (after.free ? "free" : "dependent");
    emit(opt, os.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// demos

int demoTriv(const Options& opt) {
  Field f = parseFieldSpec("Q(t)");
  auto z = generatorElement(Variety::TrivialMult, 1, f, 1);
  std::vector<FreeElement> elems = {z, z.scaled(Scalar::variable(f, "t"))};
  auto rep = mlmCheck(Variety::TrivialMult, elems, 1);
  normalizeWitness(rep.full, f);
  bool zero = witnessValue(rep.full, elems).isZero();
  if (opt.format == "json") {
    json j = json::parse(mlmReportJson(rep));
    j["witnessSubstitutesToZero"] = zero;
    emit(opt, j.dump(2));
  } else {
    std::ostringstream os;
    os << "trivial-mult instance {z, t z} over Q(t)\nverdict: " << rep.verdict
       << "\nbase-subfield: " << (rep.base.free ? "free" : "dependent")
       << "\nfull-field: " << (rep.full.free ? "free" : "dependent") << "\nwitness:";
    for (const auto& t : rep.full.witness)
      os << " + " << t.coef.str() << " " << t.monomial.sexpr();
    os << "\nwitness substitutes to zero: " << (zero ? "yes" : "no");
    emit(opt, os.str());
  }
  return 0;
}

int demoComassoc(const Options& opt) {
  // commutative-associative surrogate: the polynomial ring lives inside its
  // fraction field F = Q(x,y); the host is one-dimensional over F
  Field f = parseFieldSpec("Q(x,y)");
  Scalar x = Scalar::variable(f, "x");
  Scalar y = Scalar::variable(f, "y");
  // monomial evaluations of degree <= 2 in {x, y}; x-powers first so the
  // earliest full-field dependence is the canonical (1/x) x^2 - x relation
  std::vector<std::pair<std::string, Scalar>> monos = {
      {"x", x}, {"x^2", x * x}, {"x*y", x * y}, {"y", y}, {"y^2", y * y}};
  std::vector<SparseRow> rows;
  for (const auto& [name, val] : monos) rows.push_back(SparseRow{{0, val}});

  auto baseW = scopedDependence(f, rows, Scope::BaseSubfield);
  auto fullW = scopedDependence(f, rows, Scope::FullField);

  std::vector<std::pair<std::string, Scalar>> witness;
  Scalar check = Scalar::zero(f);
  if (fullW) {
    // canonical form: coefficient -1 on the lowest monomial, higher first
    Scalar first = liftScalar(fullW->begin()->second, f);
    Scalar s = -first.inv();
    for (auto it = fullW->rbegin(); it != fullW->rend(); ++it) {
      Scalar cf = liftScalar(it->second, f) * s;
      witness.push_back({monos[it->first].first, cf});
      check = check + cf * monos[it->first].second;
    }
  }
  bool zero = fullW && check.isZero();

  if (opt.format == "json") {
    json j;
    j["demo"] = "comassoc";
    j["field"] = "Q(x,y)";
    j["baseVerdict"] = baseW ? "dependent" : "free-up-to-2";
    j["fullVerdict"] = fullW ? "dependent" : "free-up-to-2";
    json w = json::array();
    for (const auto& [name, c] : witness)
      w.push_back({{"coef", c.str()}, {"monomial", name}});
    j["witness"] = fullW ? w : json(nullptr);
    j["witnessSubstitutesToZero"] = zero;
    emit(opt, j.dump(2));
  } else {
    std::ostringstream os;
    os << "commutative-associative instance {x, y} in Q(x,y), degree 2"
       << "\nbase-subfield: " << (baseW ? "dependent" : "free")
       << "\nfull-field: " << (fullW ? "dependent" : "free") << "\nwitness:";
    for (const auto& [name, c] : witness) os << " + " << c.str() << " " << name;
    os << "\nwitness substitutes to zero: " << (zero ? "yes" : "no");
    emit(opt, os.str());
  }
  return 0;
}

int demoMlmBatch(const Options& opt, Variety v) {
  Field f = parseFieldSpec("Q(t)");
  std::mt19937_64 rng(opt.seed);
  Variety host = v == Variety::Poisson ? Variety::Lie : v;
  int consistent = 0, ran = 0;
  std::ostringstream os;
  json list = json::array();
  for (int it = 0; it < 10; ++it) {
    auto a = randomElement(host, 2, f, 2, rng);
    auto b = randomElement(host, 2, f, 2, rng);
    if (a.isZero() || b.isZero() || a == b) continue;
    auto rep = mlmCheck(v, {a, b}, opt.degree);
    ++ran;
    consistent += rep.verdict == "mlm-consistent";
    os << "instance " << it << ": " << rep.verdict << "\n";
    list.push_back({{"instance", it}, {"verdict", rep.verdict}});
  }
  os << "consistent " << consistent << "/" << ran;
  if (opt.format == "json") {
    json j;
    j["demo"] = varietyName(v);
    j["seed"] = opt.seed;
    j["degree"] = opt.degree;
    j["instances"] = list;
    j["consistent"] = consistent;
    j["ran"] = ran;
    emit(opt, j.dump(2));
  } else {
    emit(opt, os.str());
  }
  return 0;
}

int demoJordanClaims(const Options& opt) {
  Field f = parseFieldSpec("Q");
  std::mt19937_64 rng(opt.seed);
  int trials = 25;
  bool proofIdentity = true, claimOne = true;
  Scalar four = Scalar::fromInt(f, 4);
  for (int it = 0; it < trials; ++it) {
    auto p = randomElement(Variety::SpecialJordan, 2, f, 3, rng);
    auto q = randomElement(Variety::SpecialJordan, 2, f, 3, rng);
    auto z = randomElement(Variety::SpecialJordan, 2, f, 3, rng);
    auto p2 = jordanCirc(p, p);
    proofIdentity = proofIdentity &&
                    jordanCirc(jordanCirc(z, p2), p) == jordanCirc(p2, jordanCirc(z, p));
    // Claim 1 restated: z(pq-qp) - (pq-qp)z = 4[(p o z) o q - p o (z o q)],
    // with juxtaposition the associative product of the representation
    auto assocMul = [](FreeElement a, FreeElement b) {
      a.tag = Variety::Associative;
      b.tag = Variety::Associative;
      FreeElement r = multiply(a, b);
      r.tag = Variety::SpecialJordan;
      return r;
    };
    auto comm = assocMul(p, q) - assocMul(q, p);
    auto lhs = assocMul(z, comm) - assocMul(comm, z);
    auto rhs = (jordanCirc(jordanCirc(p, z), q) - jordanCirc(p, jordanCirc(z, q)))
                   .scaled(four);
    claimOne = claimOne && lhs == rhs;
  }
  if (opt.format == "json") {
    json j;
    j["demo"] = "jordan-claims";
    j["trials"] = trials;
    j["proofIdentity"] = proofIdentity;
    j["claimOneCommutation"] = claimOne;
    emit(opt, j.dump(2));
  } else {
    std::ostringstream os;
    os << "jordan claims on " << trials << " random triples"
       << "\n(z o p^2) o p = p^2 o (z o p): " << (proofIdentity ? "pass" : "FAIL")
       << "\nz[p,q] - [p,q]z = 4((p o z) o q - p o (z o q)): "
       << (claimOne ? "pass" : "FAIL");
    emit(opt, os.str());
  }
  return proofIdentity && claimOne ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freeness laboratory for free algebras in homogeneous varieties"};
  app.require_subcommand(1);
  Options opt;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--field", opt.field, "field spec: Q, GF(p), Q(t,...)");
    sub->add_option("--variety", opt.variety, "variety tag");
    sub->add_option("--n", opt.n, "host generator count");
    sub->add_option("--degree,-d", opt.degree, "degree bound");
    sub->add_option("--scope", opt.scope, "full-field | base-subfield");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--budget", opt.budget, "trial budget");
    sub->add_option("--format", opt.format, "text | json | csv");
    sub->add_option("--output,-o", opt.output, "output file (default stdout)");
    sub->add_option("--cap", opt.cap, "monomial count cap");
  };

  auto* basis = app.add_subcommand("basis", "basis table of one degree");
  addCommon(basis);
  auto* dims = app.add_subcommand("dims", "dimension table per variety/degree");
  addCommon(dims);
  bool dimsAll = true;
  dims->add_flag_function(
      "--single", [&](int64_t) { dimsAll = false; },
      "only the variety given by --variety");
  auto* freeness = app.add_subcommand("freeness", "freeness certificate up to d");
  addCommon(freeness);
  freeness->add_option("--elements,-e", opt.elements, "element texts");
  freeness->add_option("--input,-i", opt.input, "file with one element per line");
  auto* minorsCmd = app.add_subcommand("minors", "minors of the parametric matrix");
  addCommon(minorsCmd);
  minorsCmd->add_option("--frame", opt.frame,
                        "frame file: one line per slot, elements ';'-separated");
  minorsCmd->add_option("--m", opt.minorSize, "minor size (default row count)");
  minorsCmd->add_option("--mode", opt.mode, "all | first");
  auto* specialize = app.add_subcommand("specialize", "integer-point search");
  addCommon(specialize);
  specialize->add_option("--frame", opt.frame, "frame file");
  auto* mlm = app.add_subcommand("mlm-check", "base-free vs full-free verdict");
  addCommon(mlm);
  mlm->add_option("--elements,-e", opt.elements, "element texts");
  mlm->add_option("--input,-i", opt.input, "file with one element per line");
  auto* transform = app.add_subcommand("transform", "apply elementary moves");
  addCommon(transform);
  transform->add_option("--input,-i", opt.input, "tuple file, one element per line");
  transform->add_option("--script", opt.script, "move script: linear ... / subst ...");
  auto* demo = app.add_subcommand("demo", "worked examples");
  addCommon(demo);
  demo->add_option("name", opt.demo,
                   "triv | comassoc | mlm-lie | mlm-jordan | jordan-claims | dims")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(basis)) return runBasis(opt);
    if (app.got_subcommand(dims)) return runDims(opt, dimsAll);
    if (app.got_subcommand(freeness)) return runFreeness(opt);
    if (app.got_subcommand(minorsCmd)) return runMinors(opt);
    if (app.got_subcommand(specialize)) return runSpecialize(opt);
    if (app.got_subcommand(mlm)) return runMlmCheck(opt);
    if (app.got_subcommand(transform)) return runTransform(opt);
    if (app.got_subcommand(demo)) {
      if (opt.demo == "triv") return demoTriv(opt);
      if (opt.demo == "comassoc") return demoComassoc(opt);
      if (opt.demo == "mlm-lie") return demoMlmBatch(opt, Variety::Lie);
      if (opt.demo == "mlm-jordan") return demoMlmBatch(opt, Variety::SpecialJordan);
      if (opt.demo == "jordan-claims") return demoJordanClaims(opt);
      if (opt.demo == "dims") {
        Options d = opt;
        d.degree = std::min(opt.degree, 3);
        d.format = opt.format == "text" ? "csv" : opt.format;
        return runDims(d, true);
      }
      throw ParseError("unknown demo '" + opt.demo + "'", 0);
    }
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
