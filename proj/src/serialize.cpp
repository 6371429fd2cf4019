#include "germcalc/serialize.hpp"

#include "germcalc/errors.hpp"
#include "germcalc/parser.hpp"

namespace germcalc {

namespace {

VarIndex var_from_key(const std::string& key) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(key, &used);
    if (used != key.size() || v == 0 || v > 0xffffffffUL) throw std::out_of_range(key);
    return static_cast<VarIndex>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidWitness, "bad coordinate key '" + key + "'");
  }
}

}  // namespace

json to_json(const BasePoint& x0) {
  json out = json::object();
  for (const auto& [v, c] : x0.coords())
    out[std::to_string(v)] = print_canonical(Polynomial::constant(c));
  return out;
}

BasePoint base_from_json(const json& j, Field field) {
  std::map<VarIndex, Scalar> coords;
  for (const auto& [key, value] : j.items())
    coords.emplace(var_from_key(key), parse_scalar(value.get<std::string>(), field));
  return BasePoint(field, std::move(coords));
}

json to_json(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(print_canonical(p));
  return out;
}

Polynomial poly_from_json(const json& j, Field field) {
  return parse_poly(j.get<std::string>(), field);
}

std::vector<Polynomial> polys_from_json(const json& j, Field field) {
  std::vector<Polynomial> out;
  for (const auto& item : j) out.push_back(poly_from_json(item, field));
  return out;
}

json to_json(const RationalCurve& z) {
  json out = json::object();
  for (const auto& [v, c] : z.components()) out[std::to_string(v)] = print_univariate(c);
  return out;
}

RationalCurve curve_from_json(const json& j, const BasePoint& base) {
  std::map<VarIndex, UniPoly> components;
  for (const auto& [key, value] : j.items())
    components.emplace(var_from_key(key), parse_univariate(value.get<std::string>()));
  return RationalCurve(base, std::move(components));
}

json to_json(const VarSet& vars) {
  json out = json::array();
  for (VarIndex v : vars) out.push_back(v);
  return out;
}

VarSet varset_from_json(const json& j) {
  VarSet out;
  for (const auto& v : j) out.insert(v.get<VarIndex>());
  return out;
}

}  // namespace germcalc
