// Copyright 2026 The vcaudit Authors
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

#ifndef VCAUDIT_ERROR_HPP
#define VCAUDIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vcaudit {

// Error buckets map 1:1 onto CLI exit codes: usage=1, data=2, internal=3.
enum class ErrorKind { Usage, Data, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  static Error usage(const std::string& message) {
    return Error(ErrorKind::Usage, message);
  }
  static Error data(const std::string& message) {
    return Error(ErrorKind::Data, message);
  }
  static Error internal(const std::string& message) {
    return Error(ErrorKind::Internal, message);
  }

 private:
  ErrorKind kind_;
};

}  // namespace vcaudit

#endif  // VCAUDIT_ERROR_HPP
