// Copyright 2026 The d2dsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace d2d {

// Error raised for contract violations across the simulator. `cause` is a
// short kebab-case token ("unknown-subscriber", "invalid-state", ...) that
// also appears in reject messages and on the command line.
class SimError : public std::runtime_error {
 public:
  explicit SimError(std::string cause, const std::string& detail = {})
      : std::runtime_error(detail.empty() ? cause : cause + ": " + detail),
        cause_(std::move(cause)) {}

  const std::string& cause() const noexcept { return cause_; }

 private:
  std::string cause_;
};

}  // namespace d2d
