#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "io.hpp"

namespace gcrs {

/// Growable bit array. Bit 0 is the first bit appended; multi-bit reads and
/// writes are most-significant-bit first.
class BitBuffer {
   public:
    BitBuffer() = default;

    size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    void append_bit(bool b) {
        size_t w = len_ >> 6, off = len_ & 63;
        if (off == 0) words_.push_back(0);
        if (b) words_[w] |= uint64_t(1) << off;
        ++len_;
    }

    // Appends the low `width` bits of v, most significant first.
    void append_bits(uint64_t v, unsigned width) {
        for (unsigned i = width; i-- > 0;) append_bit((v >> i) & 1);
    }

    bool get(size_t pos) const {
        if (pos >= len_) throw std::out_of_range("BitBuffer::get");
        return (words_[pos >> 6] >> (pos & 63)) & 1;
    }

    // Reads `width` bits starting at pos, most significant first.
    uint64_t read(size_t pos, unsigned width) const {
        if (pos + width > len_) throw std::out_of_range("BitBuffer::read");
        uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v = (v << 1) | uint64_t(get(pos + i));
        return v;
    }

    // Overwrites `width` bits starting at pos (area must already exist).
    void write(size_t pos, uint64_t v, unsigned width) {
        if (pos + width > len_) throw std::out_of_range("BitBuffer::write");
        for (unsigned i = 0; i < width; ++i) {
            bool b = (v >> (width - 1 - i)) & 1;
            size_t p = pos + i;
            uint64_t mask = uint64_t(1) << (p & 63);
            if (b)
                words_[p >> 6] |= mask;
            else
                words_[p >> 6] &= ~mask;
        }
    }

    const std::vector<uint64_t>& words() const { return words_; }

    size_t size_in_bits() const { return words_.size() * 64; }

    void save(std::ostream& os) const {
        write_u64(os, len_);
        write_vec(os, words_);
    }
    static BitBuffer load(std::istream& is) {
        BitBuffer b;
        b.len_ = read_u64(is);
        b.words_ = read_vec<uint64_t>(is);
        return b;
    }

   private:
    std::vector<uint64_t> words_;
    size_t len_ = 0;
};

inline unsigned bit_length(uint64_t x) {  // |x| = floor(lg x) + 1, bit_length(0) = 0
    return x == 0 ? 0 : 64 - std::countl_zero(x);
}

// Elias gamma: unary(|x|) as (|x|-1) zeros and a one, then the low
// floor(lg x) bits of x.
inline void encode_gamma(BitBuffer& buf, uint64_t x) {
    if (x == 0) throw std::invalid_argument("gamma code undefined for 0");
    unsigned n = bit_length(x);
    for (unsigned i = 1; i < n; ++i) buf.append_bit(false);
    buf.append_bit(true);
    if (n > 1) buf.append_bits(x & ((uint64_t(1) << (n - 1)) - 1), n - 1);
}

inline uint64_t decode_gamma(const BitBuffer& buf, size_t& pos) {
    unsigned n = 1;
    while (true) {
        if (pos >= buf.size()) throw std::runtime_error("truncated gamma code");
        if (buf.get(pos++)) break;
        ++n;
    }
    uint64_t x = uint64_t(1) << (n - 1);
    if (n > 1) {
        x |= buf.read(pos, n - 1);
        pos += n - 1;
    }
    return x;
}

// Elias delta: gamma(|x|) followed by the low floor(lg x) bits of x.
inline void encode_delta(BitBuffer& buf, uint64_t x) {
    if (x == 0) throw std::invalid_argument("delta code undefined for 0");
    unsigned n = bit_length(x);
    encode_gamma(buf, n);
    if (n > 1) buf.append_bits(x & ((uint64_t(1) << (n - 1)) - 1), n - 1);
}

inline uint64_t decode_delta(const BitBuffer& buf, size_t& pos) {
    unsigned n = static_cast<unsigned>(decode_gamma(buf, pos));
    uint64_t x = uint64_t(1) << (n - 1);
    if (n > 1) {
        x |= buf.read(pos, n - 1);
        pos += n - 1;
    }
    return x;
}

// VByte: 7-bit chunks least significant first, high bit set while the
// number continues in the next byte.
inline void encode_vbyte(std::vector<uint8_t>& out, uint64_t x) {
    while (x >= 0x80) {
        out.push_back(static_cast<uint8_t>(0x80 | (x & 0x7f)));
        x >>= 7;
    }
    out.push_back(static_cast<uint8_t>(x));
}

inline uint64_t decode_vbyte(const std::vector<uint8_t>& in, size_t& pos) {
    uint64_t x = 0;
    unsigned shift = 0;
    while (true) {
        if (pos >= in.size()) throw std::runtime_error("truncated vbyte code");
        uint8_t b = in[pos++];
        x |= uint64_t(b & 0x7f) << shift;
        if (!(b & 0x80)) return x;
        shift += 7;
    }
}

}  // namespace gcrs
