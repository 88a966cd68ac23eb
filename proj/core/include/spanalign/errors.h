// Copyright 2026 The spanalign Authors
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

#ifndef SPANALIGN_ERRORS_H_
#define SPANALIGN_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace spanalign {

enum class ErrorKind {
  kParse,
  kValidation,
  kReference,
  kConfiguration,
  kContract,
  kDegenerateInput,
  kSolverCapExceeded,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception. The kind drives
// the command-line exit status; the message names the offending file and line
// when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace spanalign

#endif  // SPANALIGN_ERRORS_H_
