#ifndef IMC_SRC_JSON_UTIL_HPP
#define IMC_SRC_JSON_UTIL_HPP

// Internal helpers shared by the JSON readers; not part of the public API.

#include <initializer_list>
#include <string>
#include <vector>

#include "imc/errors.hpp"
#include "json.hpp"

namespace imc::jsonu {

using njson = nlohmann::ordered_json;

inline void expect_keys(const njson& obj, const std::string& what,
                        std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(what + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : keys) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError(what + ": unknown field \"" + item.key() + "\"");
  }
}

inline const njson& require(const njson& obj, const std::string& what, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(what + ": missing field \"" + key + "\"");
  return *it;
}

inline int as_int(const njson& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
  return v.get<int>();
}

inline double as_number(const njson& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

inline std::vector<int> as_int_array(const njson& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(as_int(e, what + " entry"));
  return out;
}

inline const njson& as_array(const njson& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array");
  return v;
}

}  // namespace imc::jsonu

#endif
