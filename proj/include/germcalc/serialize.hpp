// JSON forms of engine values; polynomials travel as canonical text.
#pragma once

#include <vector>

#include "germcalc/polynomial.hpp"
#include "germcalc/verdict.hpp"

namespace germcalc {

json to_json(const BasePoint& x0);
BasePoint base_from_json(const json& j, Field field);

json to_json(const std::vector<Polynomial>& polys);
std::vector<Polynomial> polys_from_json(const json& j, Field field);
Polynomial poly_from_json(const json& j, Field field);

/// {"2": "s", "3": "s"}: listed components only.
json to_json(const RationalCurve& z);
RationalCurve curve_from_json(const json& j, const BasePoint& base);

json to_json(const VarSet& vars);
VarSet varset_from_json(const json& j);

}  // namespace germcalc
