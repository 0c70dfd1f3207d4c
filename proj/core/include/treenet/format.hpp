/*
 * Copyright 2026 The treenet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TREENET_FORMAT_HPP_
#define TREENET_FORMAT_HPP_

#include <charconv>
#include <string>
#include <system_error>

namespace treenet {

/// Locale-independent %.17g. Round-trips every finite double.
inline std::string format_double(double value, int significant = 17) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, significant);
  return std::string(buffer, result.ptr);
}

}  // namespace treenet

#endif  // TREENET_FORMAT_HPP_
