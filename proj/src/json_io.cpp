#include "qappell/json_io.hpp"

namespace qappell {

using Json = nlohmann::ordered_json;

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const PhiSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  j["q"] = to_json(spec.q.value());
  Json nums = Json::array();
  for (const Complex& v : spec.numerators) nums.push_back(to_json(v));
  j["numerators"] = std::move(nums);
  Json dens = Json::array();
  for (const Complex& v : spec.denominators) dens.push_back(to_json(v));
  j["denominators"] = std::move(dens);
  j["x"] = to_json(spec.x);
  j["y"] = to_json(spec.y);
  return j;
}

Json to_json(const TermList& tl) {
  Json arr = Json::array();
  for (const Term& t : tl.terms) {
    Json j;
    j["coeff"] = to_json(t.coeff);
    j["spec"] = to_json(t.spec);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace qappell
