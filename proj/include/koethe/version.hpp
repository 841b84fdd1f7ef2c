#pragma once

namespace koethe {

inline constexpr const char* tool_name = "koethe-lab";
inline constexpr const char* tool_version = "1.0.0";
inline constexpr const char* instance_schema = "koethe-lab/instance/v1";
inline constexpr const char* report_schema = "koethe-lab/report/v1";

} // namespace koethe
