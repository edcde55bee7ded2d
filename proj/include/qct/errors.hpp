// Copyright 2026 The qctk Authors.
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

#ifndef QCT_ERRORS_HPP
#define QCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qct {

// All toolkit failures carry a short machine-checkable kind ("SyntaxError",
// "IllegalSite", ...) plus a human message.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace qct

#endif
