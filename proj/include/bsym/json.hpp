#pragma once

#include <json.hpp>

namespace bsym {
// Insertion-ordered so serialized output is byte-stable.
using Json = nlohmann::ordered_json;
}  // namespace bsym
