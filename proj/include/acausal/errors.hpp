// Copyright 2026 The acausal Authors
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

#include <stdexcept>
#include <string>

namespace acausal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ACAUSAL_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(std::string(#Name ": ") + what) {} \
  };

ACAUSAL_DEFINE_ERROR(DuplicateLabel)
ACAUSAL_DEFINE_ERROR(UnknownLabel)
ACAUSAL_DEFINE_ERROR(NonSquareSubsystem)
ACAUSAL_DEFINE_ERROR(ShapeMismatch)
ACAUSAL_DEFINE_ERROR(DimensionMismatch)
ACAUSAL_DEFINE_ERROR(NotPSD)
ACAUSAL_DEFINE_ERROR(NotCPTP)
ACAUSAL_DEFINE_ERROR(NotPure)
ACAUSAL_DEFINE_ERROR(UndefinedEvolution)
ACAUSAL_DEFINE_ERROR(OutOfRange)
ACAUSAL_DEFINE_ERROR(ResourceLimit)
ACAUSAL_DEFINE_ERROR(ParseError)

#undef ACAUSAL_DEFINE_ERROR

/// Default cap on the number of complex amplitudes any construction may
/// materialize (2^25).
inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 25;

/// Throws ResourceLimit when `entries` exceeds `budget`.
inline void check_budget(std::size_t entries, std::size_t budget, const std::string& what) {
  if (entries > budget) {
    throw ResourceLimit(what + " needs " + std::to_string(entries) +
                        " amplitudes, budget is " + std::to_string(budget));
  }
}

}  // namespace acausal
