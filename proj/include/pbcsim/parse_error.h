// Copyright 2026 The pbcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pbcsim {

/// Malformed input text. Line and column are 1-based; column 0 means "whole line"
/// and line 0 means the location is given inside the message instead.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::string source, size_t line, size_t column, const std::string &message)
        : std::runtime_error(
              source + (line ? ":" + std::to_string(line) : std::string()) +
              (line && column ? ":" + std::to_string(column) : std::string()) + ": " + message),
          source_(std::move(source)),
          line_(line),
          column_(column) {
    }

    const std::string &source() const { return source_; }
    size_t line() const { return line_; }
    size_t column() const { return column_; }

   private:
    std::string source_;
    size_t line_;
    size_t column_;
};

}  // namespace pbcsim
