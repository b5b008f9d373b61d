#pragma once

#include <string>
#include <string_view>

namespace tpacas::detail {

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Raw 32-byte SHA-256 of `data`.
std::string sha256_raw(std::string_view data);

}  // namespace tpacas::detail
