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

#include "spanalign/errors.h"

namespace spanalign {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kReference: return "reference error";
    case ErrorKind::kConfiguration: return "configuration error";
    case ErrorKind::kContract: return "contract error";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kSolverCapExceeded: return "solver cap exceeded";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace spanalign
