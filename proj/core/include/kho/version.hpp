#ifndef KHO_VERSION_HPP
#define KHO_VERSION_HPP

#include <string_view>

namespace kho {

inline constexpr std::string_view version_string = "0.1.0";

}

#endif
