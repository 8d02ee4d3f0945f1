#pragma once

namespace spingap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spingap
