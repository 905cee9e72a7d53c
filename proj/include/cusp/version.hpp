#ifndef CUSP_VERSION_HPP
#define CUSP_VERSION_HPP

namespace cusp {
inline constexpr const char* kVersion = "1.0.0";
}

#endif  // CUSP_VERSION_HPP
