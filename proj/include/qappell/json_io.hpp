#pragma once

#include <json.hpp>

#include "qappell/relations.hpp"

namespace qappell {

// JSON forms shared by the verifier reports and the CLI. Complex values
// serialize as [re, im].
nlohmann::ordered_json to_json(Complex z);
nlohmann::ordered_json to_json(const PhiSpec& spec);
nlohmann::ordered_json to_json(const TermList& tl);

}  // namespace qappell
