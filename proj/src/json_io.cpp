#include "pythlab/json_io.hpp"

#include <stdexcept>

namespace pythlab {

Json poly_to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json exps = Json::array();
    for (int i = 0; i < p.nvars(); ++i) exps.push_back(m[i]);
    out.push_back({{"exps", exps}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  return out;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of terms");
  int nvars = 2;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("num") || !t.contains("den"))
      throw std::invalid_argument("polynomial term needs exps, num and den");
    const auto& e = t.at("exps");
    if (!e.is_array() || e.empty() || e.size() > static_cast<std::size_t>(kMaxVars))
      throw std::invalid_argument("exps must list one to three exponents");
    nvars = std::max(nvars, static_cast<int>(e.size()));
  }
  Poly p = Poly::zero(nvars);
  for (const auto& t : j) {
    Mono m;
    const auto& e = t.at("exps");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i].is_number_integer() || e[i].get<long long>() < 0)
        throw std::invalid_argument("exponents must be nonnegative integers");
      m[static_cast<int>(i)] = e[i].get<std::uint32_t>();
    }
    Rat c = make_rat(Int(t.at("num").get<std::string>(), 10), Int(t.at("den").get<std::string>(), 10));
    p.add_term(m, c);
  }
  return p;
}

Json rat_to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>()), 10));
  throw std::invalid_argument("rational must be a string or integer");
}

Json linmap_to_json(const LinMap& m) {
  return Json::array({Json::array({rat_to_json(m(0, 0)), rat_to_json(m(0, 1))}),
                      Json::array({rat_to_json(m(1, 0)), rat_to_json(m(1, 1))})});
}

LinMap linmap_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    throw std::invalid_argument("matrix must be 2x2");
  return LinMap(rat_from_json(j[0][0]), rat_from_json(j[0][1]), rat_from_json(j[1][0]), rat_from_json(j[1][1]));
}

}  // namespace pythlab
