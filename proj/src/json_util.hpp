#pragma once

#include <json.hpp>

#include "pcaag/errors.hpp"
#include "pcaag/integer.hpp"

namespace pcaag::detail {

using nlohmann::json;

// Integers outside int64 travel as decimal strings.
inline Integer integer_from_json(const json& v) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
  if (v.is_string()) {
    try {
      return Integer::from_string(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw MalformedDocument(e.what());
    }
  }
  throw MalformedDocument("expected an integer or a decimal string");
}

inline json integer_to_json(const Integer& e) {
  if (auto small = e.to_int64()) return *small;
  return e.to_string();
}

}  // namespace pcaag::detail
