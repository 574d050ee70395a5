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

#ifndef VCAUDIT_UTIL_HPP
#define VCAUDIT_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace vcaudit {

// FNV-1a, 64 bit. Used for token codes and for input-file digests embedded in
// report metadata. Not cryptographic; a content fingerprint only.
inline constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ull;
inline constexpr uint64_t kFnvPrime = 0x100000001b3ull;

inline uint64_t fnv1a64(std::string_view bytes, uint64_t seed = kFnvOffsetBasis) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string to_hex64(uint64_t value);

// Reads a whole file; throws Error::data naming the path on failure.
std::string read_text_file(const std::string& path);

// FNV-1a digest of a file's bytes.
uint64_t digest_file(const std::string& path);

}  // namespace vcaudit

#endif  // VCAUDIT_UTIL_HPP
