#pragma once

#include <json.hpp>

#include "kleinian/moebius.hpp"
#include "kleinian/projective.hpp"

namespace kleinian {

struct GroupSpec;
struct ElementClass;
struct LimitSetApprox;
struct ElementaryVerdict;

using Json = nlohmann::json;

/// Complex numbers are [re, im]; plain numbers are accepted on input.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

/// Row-major list of 9 complex entries; nested 3x3 arrays are accepted on input.
Json matrix_to_json(const Mat3& m);
Mat3 matrix_from_json(const Json& j);
Json mat2_to_json(const Mat2& m);
Mat2 mat2_from_json(const Json& j);

Json point_to_json(const ProjPoint& p);
Json line_to_json(const ProjLine& l);

/// {"family": name, "params": {...}} or {"generators": [matrix, ...]}.
/// Throws ParseError on malformed input.
GroupSpec parse_group_spec(const Json& j);
Json group_spec_to_json(const GroupSpec& spec);

Json element_report(const ElementClass& c);
Json limit_set_report(const LimitSetApprox& a);
Json verdict_report(const ElementaryVerdict& v);

}  // namespace kleinian
