// Copyright 2026 The rbkit Authors
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

#include <cstdint>
#include <random>

namespace rbkit {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent per-task stream: hash of (master seed, sequence length,
/// sequence index, salt). Sequences keep their randomness no matter how work
/// is scheduled across threads.
inline std::mt19937_64 derive_stream(uint64_t master_seed, uint64_t m,
                                     uint64_t index, uint64_t salt = 0) {
  uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ (0x6d5a56d5a56d5a56ULL + m));
  h = splitmix64(h ^ (0xc3a5c85c97cb3127ULL + index));
  h = splitmix64(h ^ (0xb492b66fbe98f273ULL + salt));
  return std::mt19937_64(h);
}

}  // namespace rbkit
