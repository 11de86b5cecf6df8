#include "pythlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "pythlab/classify.hpp"
#include "pythlab/json_io.hpp"
#include "pythlab/length.hpp"
#include "pythlab/parser.hpp"
#include "pythlab/polyops.hpp"
#include "pythlab/ringext.hpp"
#include "pythlab/serialize.hpp"
#include "pythlab/witness.hpp"

namespace pythlab {

namespace {

constexpr int kOk = 0, kError = 1, kUnknown = 2;

struct Options {
  bool json = false;
  long budget_height = 8;
  std::size_t max_squares = 4;
  int deg_bound = 4;
  double tolerance = 1e-9;
  std::string denominator_bound = "4294967296";
  long iters = 100000;
  unsigned long seed = 1;
  std::size_t n = 3;
  std::string f_expr, surface_expr;
  std::vector<std::string> inputs;

  SosOptions sos() const {
    SosOptions o;
    o.tolerance = tolerance;
    o.max_iterations = iters;
    o.denominator_bound = Int(denominator_bound);
    return o;
  }
  WitnessBudget witness() const {
    WitnessBudget b;
    b.height = budget_height;
    b.sos = sos();
    return b;
  }
  ClassifyBudget classify() const { return {witness(), sos()}; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_input(const std::string& text) {
  std::string body = text.starts_with("@") ? slurp(text.substr(1)) : text;
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(std::string("invalid JSON: ") + e.what());
  }
}

// Expression text, or @path holding the polynomial JSON form.
Poly read_poly(const std::string& text, const std::vector<std::string>& vars = {"x", "y"}) {
  if (text.starts_with("@")) return poly_from_json(read_json_input(text));
  return parse_poly(text, vars);
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string show(const Poly& p) { return to_string(p); }

std::string show(const std::vector<WeightedSquare>& squares) {
  if (squares.empty()) return "0";
  std::string s;
  for (const auto& sq : squares) {
    if (!s.empty()) s += " + ";
    if (sq.weight != 1) s += to_string(sq.weight) + "*";
    s += "(" + to_string(sq.root) + ")^2";
  }
  return s;
}

std::string show(const LinMap& m) {
  return "[[" + to_string(m(0, 0)) + ", " + to_string(m(0, 1)) + "], [" + to_string(m(1, 0)) + ", " +
         to_string(m(1, 1)) + "]]";
}

std::string show(const SurfaceVerdict& v) {
  std::string s = to_string(v.kind);
  if (v.kind != VerdictKind::Unknown) return s + " (" + to_string(v.rule) + ")";
  if (!v.problem_case.empty()) s += " (problem case " + v.problem_case + ")";
  return s;
}

const std::string& single_input(const Options& o, const char* what) {
  if (o.inputs.size() != 1) throw CLI::ValidationError(std::string("expected exactly one ") + what);
  return o.inputs.front();
}

// ---- verbs ----

int cmd_admissible(const Options& o, std::ostream& out) {
  Poly f = read_poly(single_input(o, "polynomial"));
  AdmissibilityVerdict v = find_witness(f, o.witness());
  if (o.json) {
    Json j = admissibility_to_json(v);
    j["f"] = poly_to_json(f);
    emit(out, j);
  } else {
    out << to_string(v.kind) << "\n";
    if (v.witness) out << "witness: " << show(*v.witness) << "\n";
    if (v.kind == AdmissibilityKind::NotAdmissible) out << "certificate: -f = " << show(v.certificate) << "\n";
    if (v.kind == AdmissibilityKind::Unknown)
      out << "budget: height " << v.report.height << ", " << v.report.matrices_tried << " matrices, "
          << v.report.directions_tried << " directions\n";
  }
  return v.kind == AdmissibilityKind::Unknown ? kUnknown : kOk;
}

int cmd_family(const Options& o, std::ostream& out) {
  Poly f = read_poly(single_input(o, "polynomial"));
  AssocSequence seq = build_family(f, o.n);
  if (o.json) {
    emit(out, family_to_json(seq));
    return kOk;
  }
  out << "f = " << show(seq.base) << "\nr =";
  for (unsigned r : seq.exps) out << " " << r;
  out << "\n";
  for (std::size_t k = 1; k <= seq.polys.size(); ++k) {
    out << "F" << k << " = " << show(seq.polys[k - 1]) << "\n  =";
    bool first = true;
    for (const auto& p : constructive_decomposition(seq, k)) {
      out << (first ? " " : " + ") << "(" << show(p) << ")^2";
      first = false;
    }
    out << "\n";
  }
  return kOk;
}

int cmd_length(const Options& o, std::ostream& out) {
  Poly f = read_poly(single_input(o, "polynomial"));
  auto res = min_length(f, o.max_squares, o.sos());
  if (o.json) {
    emit(out, {{"target", poly_to_json(f)},
               {"max_squares", o.max_squares},
               {"result", res ? length_to_json(*res) : Json()}});
  } else if (!res) {
    out << "no decomposition with at most " << o.max_squares << " squares found\n";
  } else {
    out << "length " << (res->certified() ? "" : "<= ") << res->length << " (lower bound: "
        << to_string(res->lower_bound) << ")\n";
    out << "  " << show(f) << " = " << show(res->decomposition) << "\n";
  }
  return res && res->certified() ? kOk : kUnknown;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  Poly f = read_poly(single_input(o, "polynomial"));
  SosCertificate c = decompose_sos(f, o.sos());
  if (o.json) {
    emit(out, {{"target", poly_to_json(f)}, {"certificate", certificate_to_json(c)}});
  } else {
    out << to_string(c.kind) << "\n";
    if (c.kind == SosKind::Decomposition) out << "  " << show(f) << " = " << show(c.squares) << "\n";
    if (c.dual)
      out << "dual witness: L(f) = " << to_string(c.dual->apply(f)) << " < 0, moment matrix PSD over "
          << c.dual->basis.size() << " monomials (" << c.method << ")\n";
  }
  return c.kind == SosKind::Inconclusive ? kUnknown : kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  Poly f;
  if (!o.f_expr.empty() && !o.surface_expr.empty()) throw CLI::ValidationError("give either --f or --surface");
  if (!o.surface_expr.empty()) f = surface_to_f(read_poly(o.surface_expr, {"x", "y", "z"}));
  else if (!o.f_expr.empty()) f = read_poly(o.f_expr);
  else f = read_poly(single_input(o, "polynomial"));
  SurfaceVerdict v = classify_surface(f, o.classify());
  if (o.json) {
    Json j = surface_verdict_to_json(v);
    j["f"] = poly_to_json(f);
    emit(out, j);
  } else {
    out << show(v) << "\n";
    if (v.rule == VerdictRule::Main && v.admissibility->witness)
      out << "witness: " << show(*v.admissibility->witness) << "\n";
    if (v.rule == VerdictRule::SosLength) out << "f = " << show(v.decomposition) << "\n";
    if (v.rule == VerdictRule::NegSos) out << "-f = " << show(v.decomposition) << "\n";
    if (v.rule == VerdictRule::SquareDegenerate)
      out << "f = " << to_string(v.square_root->scale) << "*(" << show(v.square_root->root) << ")^2\n";
    if (!v.note.empty() && v.kind == VerdictKind::Unknown) out << "note: " << v.note << "\n";
  }
  return v.kind == VerdictKind::Unknown ? kUnknown : kOk;
}

std::vector<DuValSpec> du_val_table() {
  std::vector<DuValSpec> t;
  for (unsigned n = 1; n <= 8; ++n) t.push_back({DuValFamily::A, n});
  for (unsigned n = 4; n <= 8; ++n) t.push_back({DuValFamily::D, n});
  t.push_back({DuValFamily::E6, 0});
  t.push_back({DuValFamily::E7, 0});
  t.push_back({DuValFamily::E8, 0});
  return t;
}

int cmd_duval(const Options& o, std::ostream& out) {
  std::vector<DuValSpec> specs;
  if (o.inputs.empty()) specs = du_val_table();
  else if (o.inputs.size() == 1) specs.push_back(parse_du_val(o.inputs[0]));
  else if (o.inputs.size() == 2) specs.push_back(parse_du_val(o.inputs[0], static_cast<unsigned>(std::stoul(o.inputs[1]))));
  else throw CLI::ValidationError("expected a du Val family and optional index");
  Json all = Json::array();
  bool unknown = false;
  for (const auto& spec : specs) {
    DuValResult r = du_val(spec, o.classify());
    unknown |= r.verdict.kind == VerdictKind::Unknown;
    if (o.json)
      all.push_back({{"spec", to_string(spec)},
                     {"equation", poly_to_json(r.equation)},
                     {"f", poly_to_json(r.f)},
                     {"verdict", surface_verdict_to_json(r.verdict)}});
    else
      out << to_string(spec) << ": " << show(r.equation) << " = 0, f = " << show(r.f) << ": " << show(r.verdict)
          << "\n";
  }
  if (o.json) emit(out, specs.size() == 1 ? all[0] : all);
  return unknown ? kUnknown : kOk;
}

int reduce_chain(const Options& o, const RingRepresentation& start, const AssocSequence& seq, std::ostream& out) {
  Json steps = Json::array();
  steps.push_back(representation_to_json(start));
  RingRepresentation rep = start;
  if (!o.json) out << "F" << seq.polys.size() << ": " << rep.pairs.size() << " pairs, verified\n";
  while (!(rep.target == Poly(1))) {
    ReductionTrace trace;
    rep = reduce_representation(rep, seq, &trace);
    steps.push_back(representation_to_json(rep));
    if (!o.json) {
      out << "F" << trace.n - 1 << ": " << rep.pairs.size() << " pairs after y = x^" << trace.r << ", a = (";
      for (std::size_t i = 0; i < trace.constants.size(); ++i)
        out << (i ? ", " : "") << to_string(trace.constants[i]);
      out << "), verified\n";
    }
  }
  SearchOptions sopts;
  sopts.shape = RepresentationShape::ModulusOnly;
  sopts.sos = o.sos();
  std::string note;
  std::size_t k = std::max<std::size_t>(1, start.pairs.size());
  auto found = search_representation(Poly(1), seq.base, k, o.deg_bound, sopts, &note);
  if (o.json) {
    emit(out, {{"steps", steps},
               {"terminal_search",
                {{"target", poly_to_json(Poly(1))},
                 {"modulus", poly_to_json(seq.base)},
                 {"deg_bound", o.deg_bound},
                 {"found", found ? representation_to_json(*found) : Json()},
                 {"note", note}}}});
  } else {
    out << "1 = f*sum g^2 with deg g <= " << o.deg_bound << ": "
        << (found ? "found" : "no representation (" + note + ")") << "\n";
  }
  return kOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const std::string& in = single_input(o, "modulus or representation");
  if (in.starts_with("@") || in.starts_with("{")) {
    RingRepresentation rep = representation_from_json(read_json_input(in));
    AssocSequence seq = build_family(rep.modulus, 1);
    while (seq.polys.back().degree() < rep.target.degree() && seq.polys.size() < 16)
      seq = build_family(rep.modulus, seq.polys.size() + 1);
    return reduce_chain(o, rep, seq, out);
  }
  Poly f = read_poly(in);
  AssocSequence seq = build_family(f, o.n);
  RingRepresentation rep{f, {}, seq.polys.back(), {}, true};
  for (const auto& p : constructive_decomposition(seq, o.n)) rep.pairs.emplace_back(p, Poly());
  return reduce_chain(o, rep, seq, out);
}

AdmissibilityVerdict admissibility_from_json(const Json& j) {
  AdmissibilityVerdict v;
  const std::string kind = j.at("verdict").get<std::string>();
  if (kind == "StrictlyAdmissible") v.kind = AdmissibilityKind::StrictlyAdmissible;
  else if (kind == "AdmissibleWith") v.kind = AdmissibilityKind::AdmissibleWith;
  else if (kind == "NotAdmissible") v.kind = AdmissibilityKind::NotAdmissible;
  else if (kind == "Unknown") v.kind = AdmissibilityKind::Unknown;
  else throw std::invalid_argument("unknown verdict '" + kind + "'");
  if (j.contains("witness") && !j["witness"].is_null()) v.witness = linmap_from_json(j["witness"]);
  if (j.contains("certificate") && !j["certificate"].is_null()) v.certificate = squares_from_json(j["certificate"]);
  return v;
}

int cmd_verify(const Options& o, std::ostream& out) {
  Json j = read_json_input(single_input(o, "JSON document"));
  std::string kind, detail;
  bool valid = false, inconclusive = false;
  if (j.contains("certificate") && j.contains("target")) {
    kind = "sos certificate";
    Poly t = poly_from_json(j["target"]);
    SosCertificate c = certificate_from_json(j["certificate"]);
    inconclusive = c.kind == SosKind::Inconclusive;
    if (c.kind == SosKind::NotSos && c.dual) valid = verify_dual(t, *c.dual, &detail);
    else valid = verify_certificate(t, c);
  } else if (j.contains("modulus") && j.contains("pairs")) {
    kind = "ring representation";
    auto chk = verify_representation(representation_from_json(j));
    valid = chk.ok;
    if (!valid) detail = chk.failed + " residual " + show(chk.residual);
  } else if (j.contains("f") && j.contains("verdict") && j.contains("budget")) {
    kind = "admissibility verdict";
    AdmissibilityVerdict v = admissibility_from_json(j);
    inconclusive = v.kind == AdmissibilityKind::Unknown;
    valid = verify_verdict(poly_from_json(j["f"]), v);
  } else if (j.contains("f") && j.contains("r") && j.contains("F")) {
    kind = "family";
    AssocSequence seq = family_from_json(j);
    AssocSequence rebuilt = build_family(seq.base, seq.polys.size());
    valid = rebuilt.exps == seq.exps && rebuilt.polys == seq.polys;
    if (valid && j.contains("decompositions"))
      for (std::size_t n = 1; n <= seq.polys.size() && valid; ++n) {
        Poly sum;
        for (const auto& p : j["decompositions"].at(n - 1)) sum += poly_from_json(p).pow(2);
        valid = sum == seq.polys[n - 1];
      }
    if (!valid) detail = "family does not match its definition";
  } else if (j.contains("target") && j.contains("result")) {
    kind = "length";
    Poly t = poly_from_json(j["target"]);
    inconclusive = j["result"].is_null();
    if (!inconclusive) {
      const Json& r = j["result"];
      auto sq = squares_from_json(r.at("decomposition"));
      valid = verify_decomposition(t, sq) && sq.size() == r.at("length").get<std::size_t>();
      std::string lb = r.at("lower_bound").get<std::string>();
      if (valid && lb == "NotRealSquare") valid = !real_square_root(t);
      if (valid && lb == "NotTwoSquares") {
        auto obs = two_squares_obstruction(t);
        valid = obs && verify_two_squares_obstruction(t, *obs) && !real_square_root(t);
      }
      inconclusive = lb == "Inconclusive";
    }
  } else {
    throw std::invalid_argument("unrecognised JSON document");
  }
  if (o.json) {
    emit(out, {{"kind", kind}, {"valid", valid}, {"detail", detail}});
  } else {
    out << kind << ": " << (valid ? "valid" : inconclusive ? "inconclusive" : "INVALID") << "\n";
    if (!detail.empty() && !valid) out << "  " << detail << "\n";
  }
  if (valid) return inconclusive ? kUnknown : kOk;
  return inconclusive ? kUnknown : kError;
}

struct CorpusCase {
  std::string name, expected;
  std::function<std::string()> actual;
};

std::vector<CorpusCase> corpus_cases(const Options& o) {
  auto adm = [o](std::string e) { return [o, e] { return std::string(to_string(find_witness(parse_poly(e), o.witness()).kind)); }; };
  auto sos = [o](std::string e) { return [o, e] { return std::string(to_string(decompose_sos(parse_poly(e), o.sos()).kind)); }; };
  auto cls = [o](std::string e) { return [o, e] { return show(classify_surface(parse_poly(e), o.classify())); }; };
  auto len = [o](std::string e) {
    return [o, e] {
      auto r = min_length(parse_poly(e), 4, o.sos());
      return r ? std::to_string(r->length) + " " + to_string(r->lower_bound) : std::string("none");
    };
  };
  std::vector<CorpusCase> cs{
      {"f1 strictly admissible", "StrictlyAdmissible", adm("x^3*y")},
      {"f2 admissible", "AdmissibleWith", adm("x^2 - y^2")},
      {"f3 admissible", "AdmissibleWith", adm("-y^2 - x^7")},
      {"f4 not admissible", "NotAdmissible", adm("-2*x^2 - 3*x^4*y^2")},
      {"matrix example admissible", "AdmissibleWith", adm("-x^2*y^4 - x^4*y^2 + 3*x^3*y^3")},
      {"x^2(1-x^2) undecided", "Unknown", adm("x^2*(1 - x^2)")},
      {"admissible but top form negative", "StrictlyAdmissible", adm("-x^6 + x^2*y^2")},
      {"matrix example composition", "-(x-y)^2(x+y)^2(5y^2-x^2)",
       [] {
         Poly f = parse_poly("-x^2*y^4 - x^4*y^2 + 3*x^3*y^3");
         Poly g = parse_poly("(x - y)^2*(x + y)^2*(5*y^2 - x^2)");
         Poly h = compose_linear(f, LinMap(1, -1, 1, 1));
         if (h == g) return std::string("(x-y)^2(x+y)^2(5y^2-x^2)");
         return h == -g ? std::string("-(x-y)^2(x+y)^2(5y^2-x^2)") : show(h);
       }},
      {"transposed matrix is a witness", "true",
       [] {
         Poly f = parse_poly("-x^2*y^4 - x^4*y^2 + 3*x^3*y^3");
         return std::string(is_strictly_admissible(compose_linear(f, LinMap(1, 1, -1, 1))) ? "true" : "false");
       }},
      {"Motzkin not SOS", "NotSos", sos("x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1")},
      {"length of 9", "1 Trivial", len("9")},
      {"length of F2", "2 NotRealSquare", len("(y - x^2)^2 + 1")},
      {"length of F3", "3 NotTwoSquares", len("((y - x^2)^2 + 1)*(y - x^3)^2 + 1")},
      {"classify y", "Infinite (Main)", cls("y")},
      {"classify E8 curve", "Infinite (Main)", cls("-x^3 - y^5")},
      {"classify A1 curve", "Finite (NegSos)", cls("-x^2 - y^2")},
      {"classify -(x^2+y^4)", "Finite (NegSos)", cls("-(x^2 + y^4)")},
      {"reduce F2 to F1", "1 pair",
       [] {
         Poly f = parse_poly("y");
         AssocSequence seq = build_family(f, 2);
         RingRepresentation rep{f, {{binomial(2), Poly()}, {Poly(1), Poly()}}, seq.polys[1], {}, true};
         RingRepresentation out = reduce_representation(rep, seq);
         return out.target == Poly(1) ? std::to_string(out.pairs.size()) + " pair" : std::string("wrong target");
       }},
  };
  for (const auto& spec : du_val_table()) {
    bool finite = spec.family == DuValFamily::A && spec.n % 2 == 1;
    cs.push_back({"du Val " + to_string(spec), finite ? "Finite" : "Infinite",
                  [o, spec] { return std::string(to_string(du_val(spec, o.classify()).verdict.kind)); }});
  }
  return cs;
}

int cmd_corpus(const Options& o, std::ostream& out) {
  Json cases = Json::array();
  std::size_t failed = 0;
  for (const auto& c : corpus_cases(o)) {
    std::string got;
    try {
      got = c.actual();
    } catch (const std::exception& e) {
      got = std::string("error: ") + e.what();
    }
    bool ok = got == c.expected;
    failed += !ok;
    if (o.json) cases.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", got}, {"ok", ok}});
    else out << (ok ? "ok   " : "FAIL ") << c.name << ": " << got << (ok ? "" : " (expected " + c.expected + ")") << "\n";
  }
  // Randomised composition round trips, reproducible through --seed.
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> coef(-3, 3), ent(-4, 4);
  std::size_t rt_failed = 0;
  for (int t = 0; t < 20; ++t) {
    Poly f;
    for (int k = 0; k < 5; ++k)
      f.add_term(Mono{static_cast<uint32_t>(ent(rng) + 4) % 4, static_cast<uint32_t>(ent(rng) + 4) % 4, 0}, coef(rng));
    Rat a = ent(rng), b = ent(rng), c = ent(rng), d = ent(rng);
    if (a * d - b * c == 0) continue;
    LinMap m(a, b, c, d);
    if (!(compose_linear(compose_linear(f, m), m.inverse()) == f)) ++rt_failed;
  }
  failed += rt_failed;
  if (o.json) {
    emit(out, {{"cases", cases}, {"round_trip_failures", rt_failed}, {"seed", o.seed}, {"failed", failed}});
  } else {
    out << (rt_failed ? "FAIL " : "ok   ") << "randomised composition round trips (seed " << o.seed << ")\n";
    out << (failed ? "corpus FAILED: " + std::to_string(failed) + " mismatches" : std::string("corpus passed")) << "\n";
  }
  return failed ? kError : kOk;
}

// Value options are joined with their argument; bare tokens move behind "--".
std::vector<std::string> normalise_args(const std::vector<std::string>& args) {
  static const std::set<std::string> valued{"--budget-height", "--max-squares", "--deg-bound", "--tolerance",
                                            "--denominator-bound", "--iters", "--seed", "--f", "--surface", "--n"};
  std::vector<std::string> opts, pos;
  bool rest = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (rest) {
      pos.push_back(a);
    } else if (a == "--") {
      rest = true;
    } else if (valued.count(a) && i + 1 < args.size()) {
      opts.push_back(a + "=" + args[++i]);
    } else if (a.starts_with("--") || a == "-h") {
      opts.push_back(a);
    } else if (opts.empty() && pos.empty() && !a.starts_with("-")) {
      opts.push_back(a);  // the verb
    } else {
      pos.push_back(a);
    }
  }
  if (!pos.empty()) {
    opts.push_back("--");
    opts.insert(opts.end(), pos.begin(), pos.end());
  }
  return opts;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sums of squares and Pythagoras numbers over R[x, y, sqrt f]", "pythlab"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--budget-height", o.budget_height, "entry bound of the admissibility matrix grid")->capture_default_str();
  app.add_option("--max-squares", o.max_squares, "largest square count tried by length")->capture_default_str();
  app.add_option("--deg-bound", o.deg_bound, "cofactor degree bound for representation search")->capture_default_str();
  app.add_option("--tolerance", o.tolerance, "numeric Gram tolerance")->capture_default_str();
  app.add_option("--denominator-bound", o.denominator_bound, "largest rounding denominator")->capture_default_str();
  app.add_option("--iters", o.iters, "alternating projection iteration cap")->capture_default_str();
  app.add_option("--seed", o.seed, "seed of randomised self-checks")->capture_default_str();
  app.fallthrough();

  struct Verb {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&);
  };
  const Verb verbs[] = {
      {"admissible", "strict admissibility and witness search", cmd_admissible},
      {"family", "associated sequence F_1..F_n", cmd_family},
      {"length", "fewest squares with lower-bound evidence", cmd_length},
      {"decompose", "SOS decomposition or not-SOS certificate", cmd_decompose},
      {"classify", "Pythagoras number verdict for z^2 = f", cmd_classify},
      {"duval", "du Val table entries (all when no family is given)", cmd_duval},
      {"reduce", "descent F_n -> F_1 on a representation", cmd_reduce},
      {"verify", "re-check a JSON certificate", cmd_verify},
      {"corpus", "worked example regression", cmd_corpus},
  };
  int (*chosen)(const Options&, std::ostream&) = nullptr;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("inputs", o.inputs, "expressions, @file.json or inline JSON");
    if (std::string(v.name) == "classify") {
      sub->add_option("--f", o.f_expr, "f(x, y)");
      sub->add_option("--surface", o.surface_expr, "surface c*z^2 + r(x, y)");
    }
    if (std::string(v.name) == "family" || std::string(v.name) == "reduce")
      sub->add_option("--n", o.n, "number of family members")->capture_default_str()->check(CLI::Range(1, 12));
    sub->callback([&chosen, fn = v.fn] { chosen = fn; });
  }

  std::vector<std::string> argv = normalise_args(args);
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  try {
    return chosen(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kError;
}

}  // namespace pythlab
