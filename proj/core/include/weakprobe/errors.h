// Copyright 2026 The weakprobe Authors
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

#ifndef WEAKPROBE_ERRORS_H
#define WEAKPROBE_ERRORS_H

#include <stdexcept>
#include <string>

namespace weakprobe {

// Precondition violations (bad parameters, malformed inputs) are reported with
// std::invalid_argument. Runtime numerical guards use the type below so that
// callers such as the command-line tool can map them to a distinct exit code.
class NumericalGuardError : public std::runtime_error {
   public:
    explicit NumericalGuardError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace weakprobe

#endif  // WEAKPROBE_ERRORS_H
