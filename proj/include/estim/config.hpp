#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "estim/experiment.hpp"

namespace estim {

/// Flat `dotted.key = value` text, one entry per line. `#` starts a comment,
/// lists are comma separated, strings may be double-quoted. Defaults come from
/// the model named by `model.name` (or its alias `model`), then every entry
/// is applied in file order followed by `overrides` ("key=value" strings).
///
/// Throws ConfigError carrying line/column for syntax errors and the
/// offending key for validation errors.
ExperimentConfig parse_config_text(std::string_view text,
                                   const std::vector<std::string>& overrides = {});

/// Reads `path` and forwards to parse_config_text. Unreadable files raise
/// ConfigError.
ExperimentConfig parse_config(const std::filesystem::path& path,
                              const std::vector<std::string>& overrides = {});

/// Every field of `config`, in a form parse_config_text maps back to an equal
/// config.
std::string serialize_config(const ExperimentConfig& config);

/// Throws ConfigError naming the first key whose value violates its
/// precondition.
void validate_config(const ExperimentConfig& config);

/// Applies ESTIM_OUTPUT_DIR when set and non-empty.
void apply_environment(ExperimentConfig& config);

/// Keys understood by the parser, in serialization order.
const std::vector<std::string>& config_keys();

}  // namespace estim
