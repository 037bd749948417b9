#pragma once

namespace pqsl {

#ifdef PQSL_VERSION
inline constexpr const char* kVersion = PQSL_VERSION;
#else
inline constexpr const char* kVersion = "0.1.0";
#endif

}  // namespace pqsl
