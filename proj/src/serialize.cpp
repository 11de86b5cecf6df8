#include "pythlab/serialize.hpp"

#include <stdexcept>

namespace pythlab {

namespace {

Json mono_to_json(const Mono& m, int nvars) {
  Json e = Json::array();
  for (int v = 0; v < nvars; ++v) e.push_back(m[v]);
  return e;
}

Mono mono_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3) throw std::invalid_argument("monomial: expected 2 or 3 exponents");
  Mono m;
  for (std::size_t v = 0; v < j.size(); ++v) m[static_cast<int>(v)] = j[v].get<uint32_t>();
  return m;
}

}  // namespace

Json squares_to_json(const std::vector<WeightedSquare>& squares) {
  Json j = Json::array();
  for (const auto& s : squares) j.push_back({{"weight", rat_to_json(s.weight)}, {"root", poly_to_json(s.root)}});
  return j;
}

std::vector<WeightedSquare> squares_from_json(const Json& j) {
  std::vector<WeightedSquare> out;
  for (const auto& s : j) {
    WeightedSquare w{rat_from_json(s.at("weight")), poly_from_json(s.at("root"))};
    if (sgn(w.weight) <= 0) throw std::invalid_argument("square weights must be positive");
    out.push_back(std::move(w));
  }
  return out;
}

Json dual_to_json(const DualWitness& w) {
  Json j;
  j["basis"] = Json::array();
  for (const auto& m : w.basis) j["basis"].push_back(mono_to_json(m, 2));
  j["values"] = Json::array();
  for (const auto& [m, v] : w.values) j["values"].push_back({{"exps", mono_to_json(m, 2)}, {"value", rat_to_json(v)}});
  return j;
}

DualWitness dual_from_json(const Json& j) {
  DualWitness w;
  for (const auto& m : j.at("basis")) w.basis.push_back(mono_from_json(m));
  for (const auto& e : j.at("values")) w.values[mono_from_json(e.at("exps"))] = rat_from_json(e.at("value"));
  return w;
}

Json certificate_to_json(const SosCertificate& cert) {
  Json j;
  j["kind"] = to_string(cert.kind);
  j["method"] = cert.method;
  j["squares"] = cert.kind == SosKind::Decomposition ? squares_to_json(cert.squares) : Json();
  j["dual"] = cert.dual ? dual_to_json(*cert.dual) : Json();
  return j;
}

SosCertificate certificate_from_json(const Json& j) {
  SosCertificate c;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Decomposition") c.kind = SosKind::Decomposition;
  else if (kind == "NotSos") c.kind = SosKind::NotSos;
  else if (kind == "Inconclusive") c.kind = SosKind::Inconclusive;
  else throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  c.method = j.value("method", "");
  if (j.contains("squares") && !j["squares"].is_null()) c.squares = squares_from_json(j["squares"]);
  if (j.contains("dual") && !j["dual"].is_null()) c.dual = dual_from_json(j["dual"]);
  return c;
}

Json admissibility_to_json(const AdmissibilityVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["witness"] = v.witness ? linmap_to_json(*v.witness) : Json();
  j["certificate"] = v.kind == AdmissibilityKind::NotAdmissible ? squares_to_json(v.certificate) : Json();
  j["budget"] = {{"height", v.report.height},
                 {"directions_tried", v.report.directions_tried},
                 {"matrices_tried", v.report.matrices_tried},
                 {"certificate_attempted", v.report.certificate_attempted}};
  j["stage"] = v.stage;
  return j;
}

Json obstruction_to_json(const TwoSquaresObstruction& o) {
  Json j;
  j["kind"] = o.kind == TwoSquaresObstruction::Kind::QuadraticDiscriminant ? "QuadraticDiscriminant" : "BinomialCurve";
  j["swapped"] = o.swapped;
  j["r"] = o.r;
  j["c"] = rat_to_json(o.c);
  j["witness"] = poly_to_json(o.witness);
  return j;
}

Json length_to_json(const LengthResult& r) {
  Json j;
  j["length"] = r.length;
  j["decomposition"] = squares_to_json(r.decomposition);
  j["lower_bound"] = to_string(r.lower_bound);
  j["obstruction"] = r.obstruction ? obstruction_to_json(*r.obstruction) : Json();
  return j;
}

Json surface_verdict_to_json(const SurfaceVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["rule"] = to_string(v.rule);
  Json ev;
  switch (v.rule) {
    case VerdictRule::SquareDegenerate:
      ev = {{"scale", rat_to_json(v.square_root->scale)}, {"root", poly_to_json(v.square_root->root)}};
      break;
    case VerdictRule::SosLength:
    case VerdictRule::NegSos: ev = {{"squares", squares_to_json(v.decomposition)}}; break;
    case VerdictRule::Main: ev = admissibility_to_json(*v.admissibility); break;
    case VerdictRule::None: break;
  }
  j["evidence"] = ev;
  j["problem"] = v.problem_case.empty() ? Json() : Json(v.problem_case);
  j["note"] = v.note;
  return j;
}

}  // namespace pythlab
