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

#include "pbcsim/json_io.h"

#include <iterator>
#include <vector>

#include "pbcsim/parse_error.h"

namespace pbcsim {

namespace {

// Iterator over the text that publishes how far the lexer has read.
struct TrackingIterator {
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char *;
    using reference = const char &;

    const char *p = nullptr;
    const char **cursor = nullptr;

    reference operator*() const { return *p; }
    TrackingIterator &operator++() {
        ++p;
        *cursor = p;
        return *this;
    }
    TrackingIterator operator++(int) {
        auto old = *this;
        ++*this;
        return old;
    }
    bool operator==(const TrackingIterator &o) const { return p == o.p; }
    bool operator!=(const TrackingIterator &o) const { return p != o.p; }
};

struct Frame {
    bool is_array = false;
    size_t index = 0;
    std::string key;
};

std::string escape_pointer_token(const std::string &s) {
    std::string out;
    for (char c : s) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string slot_path(const std::vector<Frame> &frames) {
    std::string out;
    for (const auto &f : frames) {
        out += "/";
        out += f.is_array ? std::to_string(f.index) : escape_pointer_token(f.key);
    }
    return out;
}

std::pair<size_t, size_t> line_col(const std::string &text, size_t offset) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < offset && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return {line, col};
}

}  // namespace

LocatedJson::LocatedJson(const std::string &text, std::string source) : source_(std::move(source)), text_(text) {
    const char *begin = text_.data();
    const char *cursor = begin;
    TrackingIterator first{begin, &cursor};
    TrackingIterator last{begin + text_.size(), &cursor};
    std::vector<Frame> frames;

    // The lexer has consumed the token (and possibly one lookahead character)
    // when an event fires; back up over whitespace and the lookahead.
    auto here = [&]() {
        size_t off = static_cast<size_t>(cursor - begin);
        while (off > 0 && (off > text_.size() || std::isspace(static_cast<unsigned char>(text_[off - 1])) ||
                           text_[off - 1] == ',' || text_[off - 1] == ':')) {
            off--;
        }
        return off > 0 ? off - 1 : 0;
    };
    auto close_slot = [&]() {
        if (!frames.empty() && frames.back().is_array) {
            frames.back().index++;
        }
    };
    using event_t = nlohmann::json::parse_event_t;
    nlohmann::json::parser_callback_t callback = [&](int, event_t event, nlohmann::json &parsed) {
        switch (event) {
            case event_t::object_start:
            case event_t::array_start:
                offsets_.emplace(slot_path(frames), here());
                frames.push_back({event == event_t::array_start, 0, ""});
                break;
            case event_t::key:
                frames.back().key = parsed.get<std::string>();
                break;
            case event_t::object_end:
            case event_t::array_end:
                frames.pop_back();
                close_slot();
                break;
            case event_t::value:
                offsets_.emplace(slot_path(frames), here());
                close_slot();
                break;
        }
        return true;
    };
    try {
        root_ = nlohmann::json::parse(first, last, callback);
    } catch (const nlohmann::json::parse_error &e) {
        auto [line, col] = line_col(text_, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        auto pos = what.find("syntax error");
        throw ParseError(source_, line, col, pos == std::string::npos ? "invalid JSON" : what.substr(pos));
    }
}

std::pair<size_t, size_t> LocatedJson::position(const std::string &pointer) const {
    std::string p = pointer;
    while (true) {
        auto it = offsets_.find(p);
        if (it != offsets_.end()) {
            return line_col(text_, it->second);
        }
        if (p.empty()) {
            return {1, 1};
        }
        p.resize(p.rfind('/'));
    }
}

void LocatedJson::fail(const std::string &pointer, const std::string &message) const {
    auto [line, col] = position(pointer);
    throw ParseError(source_, line, col, message);
}

}  // namespace pbcsim
