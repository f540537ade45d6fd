#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "hallbase/canonical.hpp"
#include "hallbase/oracle.hpp"
#include "hallbase/straighten.hpp"
#include "hallbase/tube.hpp"

namespace hallbase {

// insertion-ordered so that dumps are byte-deterministic
using Json = nlohmann::ordered_json;

struct ParseError : std::invalid_argument {
    size_t pos;
    ParseError(const std::string& what, size_t p)
        : std::invalid_argument(what + " at position " + std::to_string(p)), pos(p) {}
};

Json to_json(const Laurent& p);
Json to_json(const RatFunc& f);
Json to_json(const PBWIndex& c);
Json to_json(const AlgebraElement& x);
Json to_json(const Multipartition& m);
Json to_json(const TubeElement& x);
Json to_json(const Matrix& m);

Laurent laurent_from_json(const Json& j);
RatFunc ratfunc_from_json(const Json& j);
PBWIndex index_from_json(const Json& j);
AlgebraElement element_from_json(const Json& j);
Multipartition multipartition_from_json(const Json& j);
TubeElement tube_element_from_json(const Json& j);

// "P0^2 * D(2,1) * I1": the product of the listed PBW generators, "1" is the unit
AlgebraElement parse_shorthand(const std::string& s);
// AlgebraElement JSON when the text starts with '{', shorthand otherwise
AlgebraElement parse_operand(const std::string& s);

// "a,b,c" -> integers
std::vector<int> parse_int_list(const std::string& s);

}  // namespace hallbase
