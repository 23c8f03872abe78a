#pragma once

#include <string>
#include <vector>

#include "gch/harness/config.hpp"

namespace gch::harness {

struct PresetInfo {
  std::string name;
  std::string summary;
};

/// Named scenario configurations.
const std::vector<PresetInfo>& presets();

/// Throws ConfigError for an unknown name.
RunConfig preset(const std::string& name);

/// Rotation constants and induced coefficients as a JSON object.
Json rotation_constants_json(double omega);

}  // namespace gch::harness
