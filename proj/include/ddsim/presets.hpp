#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ddsim {

// Desk-scale experiment presets named after the measurements they mirror.
// Every preset is a complete config document consumable by run_config.
std::vector<std::string> preset_names();
bool has_preset(const std::string& name);
nlohmann::json preset_config(const std::string& name);

}  // namespace ddsim
