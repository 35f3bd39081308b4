#pragma once

namespace convnls {

// Single source of truth for the version string embedded in all outputs.
inline constexpr const char* kVersion = "convnls 1.0.0";

} // namespace convnls
