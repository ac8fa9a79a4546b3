#pragma once

#include <json.hpp>

#include "hamlie/automorphism.hpp"
#include "hamlie/forms.hpp"
#include "hamlie/lie_algebra.hpp"

namespace hamlie::detail {

using nlohmann::ordered_json;

ordered_json field_json(const Field& f);
Field field_from(const ordered_json& j);
ordered_json heights_json(const Heights& h);
Heights heights_from(const ordered_json& j);
ordered_json poly_json(const Poly& p);
Poly poly_from(const ordered_json& j, const Heights& h, const Field& f);
ordered_json form_json(const Form2& w);
Form2 form_from(const ordered_json& j);
ordered_json vec_json(const Vec& v);

}  // namespace hamlie::detail
