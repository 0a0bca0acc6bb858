// mra: massive random access simulator
// Copyright (C) 2026 mra contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mra {

// MSB-first bit writer; multi-bit fields come out big-endian.
class BitWriter {
public:
    void put(std::uint64_t value, unsigned width);
    void put_bit(bool bit);
    // Golomb-Rice: (v >> k) ones, a terminating zero, then the low k bits.
    void put_rice(std::uint64_t value, unsigned k);

    [[nodiscard]] std::size_t bit_length() const noexcept { return bits_; }
    // Zero-padded to a byte boundary.
    [[nodiscard]] std::vector<std::uint8_t> finish() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Throw DecodeError when reading past the end.
    std::uint64_t get(unsigned width);
    bool get_bit();
    std::uint64_t get_rice(unsigned k, std::uint64_t max_quotient);

    [[nodiscard]] std::size_t position() const noexcept { return pos_; }
    [[nodiscard]] std::size_t size_bits() const noexcept { return bytes_.size() * 8; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

// Bits a Rice code with parameter k spends on value.
constexpr std::uint64_t rice_length(std::uint64_t value, unsigned k) noexcept { return (value >> k) + 1 + k; }

}  // namespace mra
