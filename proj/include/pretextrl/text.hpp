// Copyright 2026 The pretextrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRETEXTRL_TEXT_HPP_
#define PRETEXTRL_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace pretextrl {

std::string to_lower_ascii(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool is_ascii_punct(char c);

// Free-text equality relation: lowercase, collapse whitespace runs to one
// space, trim, then strip trailing punctuation.
std::string canonical_text(std::string_view s);

}  // namespace pretextrl

#endif  // PRETEXTRL_TEXT_HPP_
