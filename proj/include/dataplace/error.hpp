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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dataplace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arity or nesting-shape mismatch between operands.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Malformed text: brace notation, config documents.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column,
             const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed but semantically invalid configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured tuple budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t requested, std::size_t limit, const std::string& what);

  std::size_t requested() const { return requested_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

}  // namespace dataplace
