#pragma once

#include <string>

#include <json.hpp>

#include "minorlab/presented.hpp"

namespace minorlab {

using Json = nlohmann::ordered_json;

Json to_json(const VertexName& name);
Json to_json(const PresCertificate& cert);
Json to_json(const Refutation& r);
// Keys: kind, payload, budget, truncation.
Json to_json(const Verdict& v);

}  // namespace minorlab
