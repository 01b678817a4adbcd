#pragma once

namespace qcong {

inline constexpr const char* library_version = "0.1.0";
inline constexpr int log_schema_version = 1;

}  // namespace qcong
