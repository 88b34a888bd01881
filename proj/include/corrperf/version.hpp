#ifndef CORRPERF_VERSION_HPP
#define CORRPERF_VERSION_HPP

namespace corrperf {
inline constexpr const char kVersion[] = "1.0.0";
}

#endif  // CORRPERF_VERSION_HPP
