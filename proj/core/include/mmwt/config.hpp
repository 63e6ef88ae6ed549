#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mmwt/params.hpp"

namespace mmwt {

/// Flat sectioned key-value configuration:
///
///     # comment
///     [path_loss]
///     beta = 0.006
///     c_los_db = -61.4
///
/// Every key is optional; missing keys keep the NetworkParams defaults. Gains and wall loss
/// are given in dB, angles in degrees, everything else in SI units.
NetworkParams parse_params(std::string_view text, NetworkParams base = {});
NetworkParams load_params(const std::filesystem::path& path, NetworkParams base = {});

/// Applies a single "section.key=value" assignment; throws ConfigError on unknown keys.
void apply_override(NetworkParams& params, std::string_view assignment);

/// Canonical, fully-resolved text of `params` in the same format `parse_params` reads.
std::string to_config_text(const NetworkParams& params);

/// Fully qualified "section.key" names accepted by the parser.
std::vector<std::string> config_keys();

/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string config_hash(const NetworkParams& params);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace mmwt
