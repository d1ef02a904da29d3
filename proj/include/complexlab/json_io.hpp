#pragma once

#include <json.hpp>

#include "complexlab/homology.hpp"
#include "complexlab/params.hpp"

namespace complexlab {

using nlohmann::json;

/// {"n": 2, "ambient": "delta"|"boundary", "simplices": [[0,1],[2],...]}
/// The reader rejects duplicate simplices, out-of-range vertices and the
/// excluded top face of a boundary ambient, naming the offender.
json complex_to_json(const Complex& c);
Complex complex_from_json(const json& j);

/// {"mode":"exponent","r":2,"alpha":[...]} with p_i = base^(-alpha_i)
/// (base defaults to the ambient's n; written only when it differs), or
/// {"mode":"explicit","probs":[{"simplex":[0,1],"p":"1/2"},...]} where p is
/// a "num/den" string (exact) or a number (taken at its binary value).
/// Parameter files carry no ambient; one is supplied by the caller.
json params_to_json(const ParamMap& p);
ParamMap params_from_json(const json& j, const Ambient& ambient);

json betti_to_json(const BettiVector& b);

FieldSpec field_from_string(const std::string& s); // "rational" or "gf:<prime>"
std::string field_to_string(const FieldSpec& f);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace complexlab
