#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "io.hpp"

namespace gcrs {

// Positions are 1-based: access(i) with 1 <= i <= n, rank(i) with 0 <= i <= n,
// select(j) with 0 <= j <= rank(n) and select(0) = 0.

namespace detail {
inline uint64_t select_in_word(uint64_t w, unsigned j) {  // j-th set bit, 1-based
    for (unsigned i = 0; i < 64; ++i)
        if ((w >> i) & 1 && --j == 0) return i;
    throw std::logic_error("select_in_word: not enough bits");
}
}  // namespace detail

/// Plain bitmap with one level of absolute rank counters (one per 512 bits).
class PlainBitmap {
   public:
    static constexpr size_t kSuper = 512;  // bits per counter block (8 words)

    PlainBitmap() = default;

    explicit PlainBitmap(const std::vector<bool>& bits) {
        n_ = bits.size();
        words_.assign((n_ + 63) / 64, 0);
        for (size_t i = 0; i < n_; ++i)
            if (bits[i]) words_[i >> 6] |= uint64_t(1) << (i & 63);
        build_counters();
    }

    PlainBitmap(std::vector<uint64_t> words, size_t n) : words_(std::move(words)), n_(n) {
        words_.resize((n_ + 63) / 64);
        if (n_ & 63) words_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
        build_counters();
    }

    size_t size() const { return n_; }
    size_t ones() const { return ones_; }

    bool access(size_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("PlainBitmap::access");
        --i;
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    size_t rank1(size_t i) const {
        if (i > n_) throw std::out_of_range("PlainBitmap::rank");
        if (i == 0) return 0;
        size_t sb = i / kSuper;
        size_t r = counters_[sb];
        size_t w = sb * (kSuper / 64);
        size_t end = i;  // bits [sb*kSuper, end)
        size_t bit = sb * kSuper;
        while (bit + 64 <= end) {
            r += std::popcount(words_[w++]);
            bit += 64;
        }
        if (bit < end) r += std::popcount(words_[w] & ((uint64_t(1) << (end - bit)) - 1));
        return r;
    }
    size_t rank0(size_t i) const { return i - rank1(i); }

    size_t select1(size_t j) const {
        if (j == 0) return 0;
        if (j > ones_) throw std::out_of_range("PlainBitmap::select1");
        // binary search counters for the superblock containing the j-th one
        size_t lo = 0, hi = counters_.size() - 1;  // counters_[k] = rank before block k
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (counters_[mid] < j)
                lo = mid;
            else
                hi = mid - 1;
        }
        size_t r = counters_[lo];
        size_t w = lo * (kSuper / 64);
        while (true) {
            unsigned pc = std::popcount(words_[w]);
            if (r + pc >= j) break;
            r += pc;
            ++w;
        }
        return w * 64 + detail::select_in_word(words_[w], static_cast<unsigned>(j - r)) + 1;
    }

    size_t select0(size_t j) const {
        if (j == 0) return 0;
        if (j > n_ - ones_) throw std::out_of_range("PlainBitmap::select0");
        size_t lo = 0, hi = counters_.size() - 1;
        auto zeros_before = [&](size_t k) { return k * kSuper - counters_[k]; };
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (zeros_before(mid) < j)
                lo = mid;
            else
                hi = mid - 1;
        }
        size_t r = zeros_before(lo);
        size_t w = lo * (kSuper / 64);
        while (true) {
            size_t valid = std::min<size_t>(64, n_ - w * 64);
            uint64_t inv = ~words_[w];
            if (valid < 64) inv &= (uint64_t(1) << valid) - 1;
            unsigned pc = std::popcount(inv);
            if (r + pc >= j) return w * 64 + detail::select_in_word(inv, static_cast<unsigned>(j - r)) + 1;
            r += pc;
            ++w;
        }
    }

    size_t size_in_bits() const { return words_.size() * 64 + counters_.size() * 64; }

    void save(std::ostream& os) const {
        write_u64(os, n_);
        write_vec(os, words_);
    }
    static PlainBitmap load(std::istream& is) {
        size_t n = read_u64(is);
        auto words = read_vec<uint64_t>(is);
        return PlainBitmap(std::move(words), n);
    }

   private:
    void build_counters() {
        counters_.assign(words_.size() / (kSuper / 64) + 1, 0);
        size_t r = 0;
        for (size_t w = 0; w < words_.size(); ++w) {
            if (w % (kSuper / 64) == 0) counters_[w / (kSuper / 64)] = r;
            r += std::popcount(words_[w]);
        }
        ones_ = r;
        // trailing sentinel lands on a superblock boundary when words divide evenly
        if (words_.size() % (kSuper / 64) == 0) counters_.back() = r;
    }

    std::vector<uint64_t> words_;
    std::vector<size_t> counters_;  // rank1 before each superblock
    size_t n_ = 0;
    size_t ones_ = 0;
};

/// RRR-style block-compressed bitmap: per-block (class, offset) pairs with
/// superblock pointers, block size 15 bits.
class RrrBitmap {
   public:
    static constexpr unsigned kBlock = 15;
    static constexpr unsigned kClassBits = 4;

    RrrBitmap() = default;

    explicit RrrBitmap(const std::vector<bool>& bits, unsigned superblock = 32)
        : sb_(superblock) {
        n_ = bits.size();
        size_t nblocks = (n_ + kBlock - 1) / kBlock;
        classes_.reserve(nblocks);
        for (size_t b = 0; b < nblocks; ++b) {
            if (b % sb_ == 0) {
                sb_offsets_.push_back(offsets_.size());
                sb_ranks_.push_back(ones_);
            }
            uint32_t block = 0;
            unsigned valid = static_cast<unsigned>(std::min<size_t>(kBlock, n_ - b * kBlock));
            for (unsigned k = 0; k < valid; ++k)
                if (bits[b * kBlock + k]) block |= 1u << k;
            unsigned cls = std::popcount(block);
            ones_ += cls;
            classes_.push_back(static_cast<uint8_t>(cls));
            unsigned ob = offset_bits(cls);
            if (ob) offsets_.append_bits(offset_of(block, cls), ob);
        }
    }

    size_t size() const { return n_; }
    size_t ones() const { return ones_; }

    bool access(size_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("RrrBitmap::access");
        --i;
        return (decode_block(i / kBlock) >> (i % kBlock)) & 1;
    }

    size_t rank1(size_t i) const {
        if (i > n_) throw std::out_of_range("RrrBitmap::rank");
        if (i == 0) return 0;
        size_t b = (i - 1) / kBlock;
        size_t sb = b / sb_;
        size_t r = sb_ranks_[sb];
        size_t off = sb_offsets_[sb];
        for (size_t k = sb * sb_; k < b; ++k) {
            r += classes_[k];
            off += offset_bits(classes_[k]);
        }
        unsigned within = static_cast<unsigned>(i - b * kBlock);
        uint32_t block = decode_at(b, off);
        r += std::popcount(block & ((1u << within) - 1));
        return r;
    }
    size_t rank0(size_t i) const { return i - rank1(i); }

    size_t select1(size_t j) const {
        if (j == 0) return 0;
        if (j > ones_) throw std::out_of_range("RrrBitmap::select1");
        return select_generic(j, true);
    }
    size_t select0(size_t j) const {
        if (j == 0) return 0;
        if (j > n_ - ones_) throw std::out_of_range("RrrBitmap::select0");
        return select_generic(j, false);
    }

    size_t size_in_bits() const {
        return classes_.size() * kClassBits + offsets_.size() +
               sb_offsets_.size() * 2 * 64;
    }

    void save(std::ostream& os) const {
        write_u64(os, n_);
        write_u64(os, sb_);
        std::vector<uint8_t> cls(classes_.begin(), classes_.end());
        write_u64(os, cls.size());
        os.write(reinterpret_cast<const char*>(cls.data()), cls.size());
        offsets_.save(os);
    }
    static RrrBitmap load(std::istream& is) {
        RrrBitmap r;
        r.n_ = read_u64(is);
        r.sb_ = static_cast<unsigned>(read_u64(is));
        size_t nc = read_u64(is);
        r.classes_.resize(nc);
        is.read(reinterpret_cast<char*>(r.classes_.data()), nc);
        if (!is) throw std::runtime_error("truncated RrrBitmap");
        r.offsets_ = BitBuffer::load(is);
        // rebuild superblock directory
        size_t off = 0;
        for (size_t b = 0; b < nc; ++b) {
            if (b % r.sb_ == 0) {
                r.sb_offsets_.push_back(off);
                r.sb_ranks_.push_back(r.ones_);
            }
            r.ones_ += r.classes_[b];
            off += offset_bits(r.classes_[b]);
        }
        return r;
    }

   private:
    static const std::array<std::array<uint32_t, kBlock + 1>, kBlock + 1>& binom() {
        static const auto table = [] {
            std::array<std::array<uint32_t, kBlock + 1>, kBlock + 1> t{};
            for (unsigned n = 0; n <= kBlock; ++n) {
                t[n][0] = 1;
                for (unsigned k = 1; k <= n; ++k)
                    t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
            }
            return t;
        }();
        return table;
    }

    static unsigned offset_bits(unsigned cls) {
        static const auto table = [] {
            std::array<unsigned, kBlock + 1> t{};
            for (unsigned c = 0; c <= kBlock; ++c) {
                uint32_t count = binom()[kBlock][c];
                t[c] = count <= 1 ? 0 : bit_length(count - 1);
            }
            return t;
        }();
        return table[cls];
    }

    // Combinatorial rank of a block among all kBlock-bit words of its class.
    static uint64_t offset_of(uint32_t block, unsigned cls) {
        uint64_t off = 0;
        unsigned remaining = cls;
        for (unsigned pos = 0; pos < kBlock && remaining > 0; ++pos) {
            if ((block >> pos) & 1) {
                --remaining;
            } else {
                // skip all words that have a 1 here
                off += binom()[kBlock - pos - 1][remaining - 1];
            }
        }
        return off;
    }

    static uint32_t block_of(uint64_t off, unsigned cls) {
        uint32_t block = 0;
        unsigned remaining = cls;
        for (unsigned pos = 0; pos < kBlock && remaining > 0; ++pos) {
            uint32_t with_one = binom()[kBlock - pos - 1][remaining - 1];
            if (off < with_one) {
                block |= 1u << pos;
                --remaining;
            } else {
                off -= with_one;
            }
        }
        return block;
    }

    uint32_t decode_at(size_t b, size_t bitoff) const {
        unsigned cls = classes_[b];
        unsigned ob = offset_bits(cls);
        uint64_t off = ob ? offsets_.read(bitoff, ob) : 0;
        return block_of(off, cls);
    }

    uint32_t decode_block(size_t b) const {
        size_t sb = b / sb_;
        size_t off = sb_offsets_[sb];
        for (size_t k = sb * sb_; k < b; ++k) off += offset_bits(classes_[k]);
        return decode_at(b, off);
    }

    size_t select_generic(size_t j, bool bit) const {
        // binary search superblocks, then scan block classes
        size_t lo = 0, hi = sb_ranks_.size() - 1;
        auto count_before = [&](size_t k) {
            return bit ? sb_ranks_[k] : k * sb_ * kBlock - sb_ranks_[k];
        };
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (count_before(mid) < j)
                lo = mid;
            else
                hi = mid - 1;
        }
        size_t r = count_before(lo);
        size_t off = sb_offsets_[lo];
        size_t b = lo * sb_;
        while (true) {
            unsigned valid = static_cast<unsigned>(std::min<size_t>(kBlock, n_ - b * kBlock));
            unsigned inblock = bit ? classes_[b] : valid - classes_[b];
            if (r + inblock >= j) break;
            r += inblock;
            off += offset_bits(classes_[b]);
            ++b;
        }
        uint32_t block = decode_at(b, off);
        if (!bit) {
            unsigned valid = static_cast<unsigned>(std::min<size_t>(kBlock, n_ - b * kBlock));
            block = ~block & ((1u << valid) - 1);
        }
        return b * kBlock + detail::select_in_word(block, static_cast<unsigned>(j - r)) + 1;
    }

    std::vector<uint8_t> classes_;
    BitBuffer offsets_;
    std::vector<size_t> sb_offsets_;  // bit offset of first block of superblock
    std::vector<size_t> sb_ranks_;    // rank1 before superblock
    size_t n_ = 0;
    size_t ones_ = 0;
    unsigned sb_ = 32;
};

/// Sparse bitmap: delta-coded gaps between consecutive 1-positions with
/// absolute samples every s1 ones. Suited to very low densities.
class SparseDeltaBitmap {
   public:
    SparseDeltaBitmap() = default;

    explicit SparseDeltaBitmap(const std::vector<bool>& bits, size_t s1 = 128) : s1_(s1) {
        n_ = bits.size();
        size_t prev = 0;
        for (size_t i = 1; i <= n_; ++i) {
            if (!bits[i - 1]) continue;
            if (ones_ % s1_ == 0) {
                sample_pos_.push_back(i);
                sample_off_.push_back(gaps_.size());
                prev = 0;  // gaps restart from the sample position itself
            }
            encode_delta(gaps_, i - prev);
            prev = i;
            ++ones_;
        }
    }

    size_t size() const { return n_; }
    size_t ones() const { return ones_; }

    bool access(size_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("SparseDeltaBitmap::access");
        size_t r = rank1(i);
        return r > rank1(i - 1);
    }

    size_t rank1(size_t i) const {
        if (i > n_) throw std::out_of_range("SparseDeltaBitmap::rank");
        if (i == 0 || ones_ == 0 || i < sample_pos_[0]) return 0;
        // predecessor sample: largest k with sample_pos_[k] <= i
        size_t lo = 0, hi = sample_pos_.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (sample_pos_[mid] <= i)
                lo = mid;
            else
                hi = mid - 1;
        }
        size_t cnt = lo * s1_;
        size_t pos = 0;
        size_t off = sample_off_[lo];
        size_t limit = std::min(ones_, (lo + 1) * s1_);
        while (cnt < limit) {
            size_t next = pos + decode_delta(gaps_, off);
            if (next > i) break;
            pos = next;
            ++cnt;
        }
        return cnt;
    }
    size_t rank0(size_t i) const { return i - rank1(i); }

    size_t select1(size_t j) const {
        if (j == 0) return 0;
        if (j > ones_) throw std::out_of_range("SparseDeltaBitmap::select1");
        size_t k = (j - 1) / s1_;
        size_t pos = 0;
        size_t off = sample_off_[k];
        for (size_t c = k * s1_; c < j; ++c) pos += decode_delta(gaps_, off);
        return pos;
    }

    size_t select0(size_t j) const {
        if (j == 0) return 0;
        if (j > n_ - ones_) throw std::out_of_range("SparseDeltaBitmap::select0");
        // binary search the monotone rank0
        size_t lo = 1, hi = n_;
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (rank0(mid) < j)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    size_t size_in_bits() const {
        return gaps_.size_in_bits() + sample_pos_.size() * 2 * 64;
    }

    void save(std::ostream& os) const {
        write_u64(os, n_);
        write_u64(os, s1_);
        gaps_.save(os);
    }
    static SparseDeltaBitmap load(std::istream& is) {
        SparseDeltaBitmap s;
        s.n_ = read_u64(is);
        s.s1_ = read_u64(is);
        s.gaps_ = BitBuffer::load(is);
        // rebuild samples
        size_t off = 0, pos = 0;
        while (off < s.gaps_.size()) {
            if (s.ones_ % s.s1_ == 0) {
                size_t here = off;
                size_t gap = decode_delta(s.gaps_, off);
                s.sample_pos_.push_back(gap);  // gap from 0 at sample boundary
                s.sample_off_.push_back(here);
                pos = gap;
            } else {
                pos += decode_delta(s.gaps_, off);
            }
            ++s.ones_;
        }
        return s;
    }

   private:
    BitBuffer gaps_;
    std::vector<size_t> sample_pos_;  // position of the (k*s1+1)-th one
    std::vector<size_t> sample_off_;  // bit offset of its gap code
    size_t n_ = 0;
    size_t ones_ = 0;
    size_t s1_ = 128;
};

}  // namespace gcrs
