// Copyright 2026 The tlri-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string_view>

namespace tlri {

struct BundledConfig {
    std::string_view name;
    std::string_view text;
};

/// Matrix files compiled into the library from configs/.
std::span<const BundledConfig> bundled_configs();

}  // namespace tlri
