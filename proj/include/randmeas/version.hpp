#pragma once

namespace randmeas {

inline constexpr const char* kArtifactVersion = "randmeas 0.1.0";

}  // namespace randmeas
