/*
 * Copyright 2026 The dataplace Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <json.hpp>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>

#include "dataplace/error.hpp"

namespace dataplace::detail {

using Json = nlohmann::json;

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    auto pos = what.find("parse error");
    throw ParseError(source, line, col, pos == std::string::npos ? what : what.substr(pos));
  }
}

/// Line of the first occurrence of "key" in the document, 0 if absent.
inline std::size_t key_line(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_col(text, pos).first;
}

struct Doc {
  std::string_view text;
  const std::string& source;

  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    throw ParseError(source, key_line(text, key), 0, what);
  }

  void only(const Json& obj, std::initializer_list<std::string_view> allowed,
            std::string_view where) const {
    if (!obj.is_object()) fail(where, std::string(where) + ": expected an object");
    for (const auto& [k, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        fail(k, "unknown field '" + k + "' in " + std::string(where));
      }
    }
  }

  const Json& required(const Json& obj, std::string_view key, std::string_view where) const {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) {
      fail(where, "missing field '" + std::string(key) + "' in " + std::string(where));
    }
    return *it;
  }

  template <typename T>
  T get(const Json& v, std::string_view key) const {
    try {
      return v.get<T>();
    } catch (const Json::exception&) {
      fail(key, "field '" + std::string(key) + "' has the wrong type");
    }
  }

  template <typename T>
  T get_or(const Json& obj, std::string_view key, T fallback) const {
    auto it = obj.find(std::string(key));
    return it == obj.end() ? fallback : get<T>(*it, key);
  }
};

}  // namespace dataplace::detail
