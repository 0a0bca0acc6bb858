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

#include "mra/feedback/bitstream.hpp"

#include "mra/core/errors.hpp"

namespace mra {

void BitWriter::put_bit(bool bit) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
}

void BitWriter::put(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) put_bit(((value >> i) & 1u) != 0);
}

void BitWriter::put_rice(std::uint64_t value, unsigned k) {
    for (std::uint64_t q = value >> k; q > 0; --q) put_bit(true);
    put_bit(false);
    if (k > 0) put(value & ((std::uint64_t{1} << k) - 1), k);
}

bool BitReader::get_bit() {
    if (pos_ >= bytes_.size() * 8) throw DecodeError("feedback codeword truncated");
    const bool bit = ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u) != 0;
    ++pos_;
    return bit;
}

std::uint64_t BitReader::get(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>(get_bit());
    return v;
}

std::uint64_t BitReader::get_rice(unsigned k, std::uint64_t max_quotient) {
    std::uint64_t q = 0;
    while (get_bit()) {
        if (++q > max_quotient) throw DecodeError("feedback codeword: Rice quotient out of range");
    }
    const std::uint64_t r = k > 0 ? get(k) : 0;
    return (q << k) | r;
}

}  // namespace mra
