#pragma once

#include <map>
#include <string>
#include <vector>

#include "ekcore/scenario.hpp"

// Flat sectioned key-value configs:
//
//   # comment
//   [section]
//   key = value
//
// Values are free-form strings; numbers render with %.17g so that
// parse -> serialize -> parse is the identity.

namespace ek {

struct ConfigFile {
    // section -> ordered (key, value) pairs
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
        sections;

    const std::string* find(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key,
             const std::string& value);
};

ConfigFile parse_config(const std::string& text);
std::string serialize_config(const ConfigFile& config);

std::string format_double(double v);  // %.17g

// Scenario <-> config mapping.
ConfigFile scenario_to_config(const Scenario& sc);
Scenario scenario_from_config(const ConfigFile& config);

ConfigFile read_config_file(const std::string& path);
void write_config_file(const std::string& path, const ConfigFile& config);

}  // namespace ek
