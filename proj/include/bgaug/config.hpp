// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bgaug/augment.hpp"

namespace bgaug {

/// Overrides default ranges with keys present in `j` (either at top level or
/// under an "augment" object). Ranges are two-element arrays, e.g.
/// {"gamma": [0.8, 1.2], "blur_probability": 0.3, "row_offset": [0, 64]}.
AugRanges aug_ranges_from_json(const nlohmann::json& j, AugRanges base = {});

/// Flat TOML subset: `[table]` headers, `key = number`, `key = [n, n]`,
/// `key = "string"`, `key = true/false`, and `#` comments.
nlohmann::json parse_toml_subset(std::string_view text);

/// Reads a .json or .toml config file and returns validated ranges.
AugRanges load_aug_ranges(const std::filesystem::path& path);

}  // namespace bgaug
