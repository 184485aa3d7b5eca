#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "islsim/simharness.hpp"

namespace islsim {

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Serializes a spec as JSON with boundary units (km, GHz, MHz, kbps, W).
/// Parsing the result yields an identical spec.
std::string spec_to_json(const ExperimentSpec& spec, int indent = 2);

/// Parses a JSON object of spec fields on top of `base`; absent keys keep the base
/// value. Unknown keys, wrong types and invalid values throw ConfigError.
ExperimentSpec spec_from_json(std::string_view text, const ExperimentSpec& base = {});

/// Expands a sweep document into specs. Accepted layouts:
///   {"base": {...}, "sweep": {"planes": [...], "transceivers": [...], ...}}
///   {"base": {...}, "specs": [{...}, {...}]}
/// A plain spec object is treated as a single-spec sweep.
std::vector<ExperimentSpec> sweep_from_json(std::string_view text, const ExperimentSpec& base = {});

/// Reads a whole file; throws ConfigError naming the path when it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace islsim
