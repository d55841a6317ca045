#pragma once

namespace spintex {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kExportFormatVersion = "1";

}  // namespace spintex
