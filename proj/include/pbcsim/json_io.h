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

/// JSON parsing that remembers where each value came from, so that semantic
/// errors in input files can point at a line and column.

#include <map>
#include <string>
#include <utility>

#include "json.hpp"

namespace pbcsim {

class LocatedJson {
   public:
    /// Throws ParseError on malformed JSON.
    LocatedJson(const std::string &text, std::string source);

    const nlohmann::json &root() const { return root_; }
    const std::string &source() const { return source_; }
    /// Line and column (1-based) of the value at a JSON pointer such as "/terms/0/state".
    std::pair<size_t, size_t> position(const std::string &pointer) const;
    /// Throws ParseError located at the given pointer (or its closest located ancestor).
    [[noreturn]] void fail(const std::string &pointer, const std::string &message) const;

   private:
    std::string source_;
    std::string text_;
    nlohmann::json root_;
    std::map<std::string, size_t> offsets_;
};

}  // namespace pbcsim
