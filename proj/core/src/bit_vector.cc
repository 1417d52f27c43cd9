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

#include "dpol/bit_vector.h"

#include <bit>
#include <cassert>

namespace dpol {

BitVector::BitVector(size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~uint64_t{0} : 0) {
  ClearTail();
}

BitVector BitVector::FromBits(absl::Span<const int> bits) {
  BitVector v(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) v.Set(i);
  }
  return v;
}

BitVector BitVector::FromString(const std::string& bits) {
  BitVector v(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') v.Set(i);
  }
  return v;
}

void BitVector::Set(size_t i, bool value) {
  assert(i < size_);
  const uint64_t bit = uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

size_t BitVector::Count() const {
  size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool BitVector::Any() const {
  for (uint64_t w : words_) {
    if (w != 0) return true;
  }
  return false;
}

size_t BitVector::NextSetBit(size_t from) const {
  if (from >= size_) return size_;
  size_t word = from >> 6;
  uint64_t w = words_[word] & (~uint64_t{0} << (from & 63));
  while (true) {
    if (w != 0) return (word << 6) + std::countr_zero(w);
    if (++word >= words_.size()) return size_;
    w = words_[word];
  }
}

size_t BitVector::FirstDifference(const BitVector& other) const {
  assert(size_ == other.size_);
  for (size_t k = 0; k < words_.size(); ++k) {
    const uint64_t x = words_[k] ^ other.words_[k];
    if (x != 0) return (k << 6) + std::countr_zero(x);
  }
  return size_;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  assert(size_ == other.size_);
  for (size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  assert(size_ == other.size_);
  for (size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  assert(size_ == other.size_);
  for (size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector out = *this;
  for (uint64_t& w : out.words_) w = ~w;
  out.ClearTail();
  return out;
}

bool BitVector::Intersects(const BitVector& other) const {
  for (size_t k = 0; k < words_.size(); ++k) {
    if ((words_[k] & other.words_[k]) != 0) return true;
  }
  return false;
}

size_t BitVector::IntersectionCount(const BitVector& other) const {
  size_t n = 0;
  for (size_t k = 0; k < words_.size(); ++k) {
    n += std::popcount(words_[k] & other.words_[k]);
  }
  return n;
}

bool operator<(const BitVector& a, const BitVector& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  const size_t i = a.FirstDifference(b);
  return i < a.size_ && !a.Get(i);
}

std::string BitVector::ToString() const {
  std::string s(size_, '0');
  for (size_t i = 0; i < size_; ++i) {
    if (Get(i)) s[i] = '1';
  }
  return s;
}

std::vector<int> BitVector::ToBits() const {
  std::vector<int> bits(size_);
  for (size_t i = 0; i < size_; ++i) bits[i] = Get(i) ? 1 : 0;
  return bits;
}

void BitVector::ClearTail() {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (uint64_t{1} << (size_ % 64)) - 1;
  }
}

}  // namespace dpol
