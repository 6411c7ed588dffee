#pragma once

#include "json.hpp"

namespace agrisim {

using Json = nlohmann::ordered_json;

}  // namespace agrisim
