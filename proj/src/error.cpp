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

#include "dataplace/error.hpp"

namespace dataplace {

namespace {

std::string located(const std::string& source, std::size_t line, std::size_t column,
                    const std::string& what) {
  std::string out = source.empty() ? std::string("<input>") : source;
  if (line > 0) {
    out += ":" + std::to_string(line);
    if (column > 0) out += ":" + std::to_string(column);
  }
  return out + ": " + what;
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column,
                       const std::string& what)
    : Error(located(source, line, column, what)),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

BudgetExceeded::BudgetExceeded(std::size_t requested, std::size_t limit,
                               const std::string& what)
    : Error("enumeration budget exceeded (" + std::to_string(requested) + " > " +
            std::to_string(limit) + "): " + what),
      requested_(requested),
      limit_(limit) {}

}  // namespace dataplace
