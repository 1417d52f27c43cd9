// Copyright 2026 The dpol Authors.
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

#ifndef DPOL_BIT_VECTOR_H_
#define DPOL_BIT_VECTOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/types/span.h"

namespace dpol {

// Fixed-length dynamic bitset. Used both for hypothesis rows (indexed by
// domain point) and for version-class masks (indexed by concept).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t size, bool value = false);

  static BitVector FromBits(absl::Span<const int> bits);
  static BitVector FromString(const std::string& bits);

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool Get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool operator[](size_t i) const { return Get(i); }
  void Set(size_t i, bool value = true);
  void Reset(size_t i) { Set(i, false); }

  size_t Count() const;
  bool Any() const;
  bool None() const { return !Any(); }

  // Index of the lowest set bit at or after `from`, or size() if none.
  size_t NextSetBit(size_t from) const;
  size_t FirstSetBit() const { return NextSetBit(0); }
  // Lowest index at which the two vectors differ, or size() if equal.
  size_t FirstDifference(const BitVector& other) const;

  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  BitVector& operator^=(const BitVector& other);
  BitVector operator~() const;
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool Intersects(const BitVector& other) const;
  // Number of set bits in (*this & other) without materializing it.
  size_t IntersectionCount(const BitVector& other) const;

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitVector& a, const BitVector& b) {
    return !(a == b);
  }
  // Lexicographic order reading bit 0 first, as in ToString().
  friend bool operator<(const BitVector& a, const BitVector& b);

  std::string ToString() const;
  std::vector<int> ToBits() const;

  const std::vector<uint64_t>& words() const { return words_; }

  template <typename H>
  friend H AbslHashValue(H h, const BitVector& v) {
    return H::combine(std::move(h), v.size_, v.words_);
  }

 private:
  void ClearTail();

  size_t size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace dpol

#endif  // DPOL_BIT_VECTOR_H_
