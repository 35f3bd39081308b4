#pragma once

#include <string>

#include "convnls/field.hpp"

namespace convnls {

/// CNLS snapshot, normative layout for cross-run reproduction:
/// magic "CNLS", version u32 = 1, dim u32, N u32, L f64, then N^dim complex
/// values as interleaved (re, im) f64, little-endian, row-major.
void write_snapshot(const std::string& path, const Field& u);
Field read_snapshot(const std::string& path);

} // namespace convnls
