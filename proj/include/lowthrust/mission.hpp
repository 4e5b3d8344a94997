#pragma once

#include <string>

#include "lowthrust/config.hpp"

namespace lowthrust {

struct ValidationError : std::runtime_error {
  std::string field;
  ValidationError(std::string f, const std::string& why)
      : std::runtime_error("invalid mission config, field '" + f + "': " + why),
        field(std::move(f)) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& why) : std::runtime_error("mission parse error: " + why) {}
};

/// Parse and validate a mission JSON document.
MissionConfig load_mission(const std::string& path);
MissionConfig parse_mission(const std::string& json_text);

}  // namespace lowthrust
