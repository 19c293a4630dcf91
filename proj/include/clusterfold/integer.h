// Copyright 2026 The clusterfold Authors
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

#ifndef CLUSTERFOLD_INTEGER_H_
#define CLUSTERFOLD_INTEGER_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace clusterfold {

// All matrix entries are exact 64-bit integers. Every arithmetic step that
// can grow an entry goes through the checked helpers below, which throw
// OverflowError instead of wrapping.
using Int = std::int64_t;

// 0-based row/column/direction index. Text formats and the CLI use 1-based.
using Index = std::size_t;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline Int CheckedAdd(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in addition");
  }
  return r;
}

inline Int CheckedSub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in subtraction");
  }
  return r;
}

inline Int CheckedMul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in multiplication");
  }
  return r;
}

inline Int CheckedNeg(Int a) { return CheckedSub(0, a); }

inline int Sign(Int a) { return (a > 0) - (a < 0); }

// The composite-path term of matrix mutation, (|a|*b + a*|b|) / 2.
// It equals a*b when a and b are both positive, -a*b when both are negative,
// and 0 otherwise, so it is always an integer.
inline Int MutationTerm(Int a, Int b) {
  if (a > 0 && b > 0) return CheckedMul(a, b);
  if (a < 0 && b < 0) return CheckedNeg(CheckedMul(a, b));
  return 0;
}

}  // namespace clusterfold

#endif  // CLUSTERFOLD_INTEGER_H_
