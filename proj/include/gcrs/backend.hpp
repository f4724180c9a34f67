#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "bitvector.hpp"
#include "io.hpp"

namespace gcrs {

enum class BitVecKind : uint16_t { Plain = 1, Rrr = 2, Delta = 3, GccBit = 4 };

/// Bitmap with 1-based rank/select, behind a virtual interface so wavelet
/// nodes can mix representations.
class BitVec {
   public:
    virtual ~BitVec() = default;
    virtual size_t size() const = 0;
    virtual bool access(size_t i) const = 0;
    virtual size_t rank1(size_t i) const = 0;
    virtual size_t select1(size_t j) const = 0;
    virtual size_t select0(size_t j) const = 0;
    virtual size_t size_in_bits() const = 0;
    virtual BitVecKind kind() const = 0;
    virtual void save(std::ostream& os) const = 0;

    size_t rank0(size_t i) const { return i - rank1(i); }
    size_t rank_bit(bool b, size_t i) const { return b ? rank1(i) : rank0(i); }
    size_t select_bit(bool b, size_t j) const { return b ? select1(j) : select0(j); }
    size_t ones() const { return rank1(size()); }
};

using BitVecPtr = std::unique_ptr<BitVec>;

class PlainBitVec final : public BitVec {
   public:
    PlainBitVec() = default;
    explicit PlainBitVec(PlainBitmap bm) : bm_(std::move(bm)) {}
    explicit PlainBitVec(const std::vector<bool>& bits) : bm_(bits) {}

    size_t size() const override { return bm_.size(); }
    bool access(size_t i) const override { return bm_.access(i); }
    size_t rank1(size_t i) const override { return bm_.rank1(i); }
    size_t select1(size_t j) const override { return bm_.select1(j); }
    size_t select0(size_t j) const override { return bm_.select0(j); }
    size_t size_in_bits() const override { return bm_.size_in_bits(); }
    BitVecKind kind() const override { return BitVecKind::Plain; }
    void save(std::ostream& os) const override { bm_.save(os); }
    static BitVecPtr load(std::istream& is) {
        return std::make_unique<PlainBitVec>(PlainBitmap::load(is));
    }

    const PlainBitmap& raw() const { return bm_; }

   private:
    PlainBitmap bm_;
};

class RrrBitVec final : public BitVec {
   public:
    RrrBitVec() = default;
    explicit RrrBitVec(RrrBitmap bm) : bm_(std::move(bm)) {}
    explicit RrrBitVec(const std::vector<bool>& bits) : bm_(bits) {}

    size_t size() const override { return bm_.size(); }
    bool access(size_t i) const override { return bm_.access(i); }
    size_t rank1(size_t i) const override { return bm_.rank1(i); }
    size_t select1(size_t j) const override { return bm_.select1(j); }
    size_t select0(size_t j) const override { return bm_.select0(j); }
    size_t size_in_bits() const override { return bm_.size_in_bits(); }
    BitVecKind kind() const override { return BitVecKind::Rrr; }
    void save(std::ostream& os) const override { bm_.save(os); }
    static BitVecPtr load(std::istream& is) {
        return std::make_unique<RrrBitVec>(RrrBitmap::load(is));
    }

   private:
    RrrBitmap bm_;
};

class DeltaBitVec final : public BitVec {
   public:
    DeltaBitVec() = default;
    explicit DeltaBitVec(SparseDeltaBitmap bm) : bm_(std::move(bm)) {}
    explicit DeltaBitVec(const std::vector<bool>& bits) : bm_(bits) {}

    size_t size() const override { return bm_.size(); }
    bool access(size_t i) const override { return bm_.access(i); }
    size_t rank1(size_t i) const override { return bm_.rank1(i); }
    size_t select1(size_t j) const override { return bm_.select1(j); }
    size_t select0(size_t j) const override { return bm_.select0(j); }
    size_t size_in_bits() const override { return bm_.size_in_bits(); }
    BitVecKind kind() const override { return BitVecKind::Delta; }
    void save(std::ostream& os) const override { bm_.save(os); }
    static BitVecPtr load(std::istream& is) {
        return std::make_unique<DeltaBitVec>(SparseDeltaBitmap::load(is));
    }

   private:
    SparseDeltaBitmap bm_;
};

// defined in gcc.hpp (needs the full set of bitmap types)
BitVecPtr load_bitvec(std::istream& is);

inline void save_bitvec(std::ostream& os, const BitVec& bv) {
    write_u16(os, static_cast<uint16_t>(bv.kind()));
    bv.save(os);
}

enum class SeqKind : uint16_t {
    PackedSeq = 1,
    GccN = 2,
    GccC = 3,
    WaveletTree = 4,
    WaveletMatrix = 5,
    Ap = 6,
};

/// Sequence over alphabet 1..sigma with 1-based access/rank/select.
class Sequence {
   public:
    virtual ~Sequence() = default;
    virtual size_t size() const = 0;
    virtual uint32_t sigma() const = 0;
    virtual uint32_t access(size_t i) const = 0;
    virtual size_t rank(uint32_t a, size_t i) const = 0;
    virtual size_t select(uint32_t a, size_t j) const = 0;
    virtual size_t size_in_bits() const = 0;
    virtual SeqKind kind() const = 0;
    virtual void save(std::ostream& os) const = 0;

   protected:
    void check_access(size_t i) const {
        if (i < 1 || i > size()) throw std::out_of_range("access: position");
    }
    void check_rank(uint32_t a, size_t i) const {
        if (a < 1 || a > sigma()) throw std::out_of_range("rank: symbol");
        if (i > size()) throw std::out_of_range("rank: position");
    }
    void check_symbol(uint32_t a) const {
        if (a < 1 || a > sigma()) throw std::out_of_range("select: symbol");
    }
};

using SequencePtr = std::unique_ptr<Sequence>;

// defined in registry.hpp
SequencePtr load_sequence(std::istream& is);

inline void save_sequence(std::ostream& os, const Sequence& s) {
    write_u16(os, static_cast<uint16_t>(s.kind()));
    s.save(os);
}

/// Baseline: ceil(lg sigma)-bit packed symbols, rank by scan with rank
/// checkpoints every kSample positions, select by binary search on rank.
class PackedSeq final : public Sequence {
   public:
    static constexpr size_t kSample = 1024;

    PackedSeq() = default;
    PackedSeq(const std::vector<uint32_t>& s, uint32_t sigma) : n_(s.size()), sigma_(sigma) {
        if (sigma == 0) throw std::invalid_argument("PackedSeq: sigma == 0");
        width_ = std::max(1u, bit_length(sigma));
        for (uint32_t x : s) {
            if (x < 1 || x > sigma) throw std::invalid_argument("PackedSeq: symbol out of range");
            data_.append_bits(x - 1, width_);
        }
        build_samples();
    }

    size_t size() const override { return n_; }
    uint32_t sigma() const override { return sigma_; }

    uint32_t access(size_t i) const override {
        check_access(i);
        return static_cast<uint32_t>(data_.read((i - 1) * width_, width_)) + 1;
    }

    size_t rank(uint32_t a, size_t i) const override {
        check_rank(a, i);
        size_t blk = i / kSample;
        size_t cnt = blk ? samples_[(blk - 1) * sigma_ + (a - 1)] : 0;
        for (size_t p = blk * kSample + 1; p <= i; ++p)
            if (access(p) == a) ++cnt;
        return cnt;
    }

    size_t select(uint32_t a, size_t j) const override {
        check_symbol(a);
        if (j == 0) return 0;
        size_t total = rank(a, n_);
        if (j > total) throw std::out_of_range("select: occurrence index");
        // first checkpoint with count >= j, then scan its block
        size_t blocks = samples_.size() / sigma_;
        size_t lo = 0, hi = blocks;  // lo blocks all have count < j
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (samples_[mid * sigma_ + (a - 1)] < j)
                lo = mid + 1;
            else
                hi = mid;
        }
        size_t cnt = lo ? samples_[(lo - 1) * sigma_ + (a - 1)] : 0;
        for (size_t p = lo * kSample + 1; p <= n_; ++p) {
            if (access(p) == a && ++cnt == j) return p;
        }
        throw std::logic_error("PackedSeq::select");
    }

    size_t size_in_bits() const override {
        return data_.size_in_bits() + samples_.size() * 64 + 128;
    }
    SeqKind kind() const override { return SeqKind::PackedSeq; }

    void save(std::ostream& os) const override {
        write_u64(os, n_);
        write_u64(os, sigma_);
        data_.save(os);
    }
    static SequencePtr load(std::istream& is) {
        auto p = std::make_unique<PackedSeq>();
        p->n_ = read_u64(is);
        p->sigma_ = static_cast<uint32_t>(read_u64(is));
        p->width_ = std::max(1u, bit_length(p->sigma_));
        p->data_ = BitBuffer::load(is);
        p->build_samples();
        return p;
    }

   private:
    void build_samples() {
        size_t blocks = n_ / kSample;
        samples_.assign(blocks * sigma_, 0);
        std::vector<uint64_t> cnt(sigma_, 0);
        for (size_t p = 1; p <= blocks * kSample; ++p) {
            ++cnt[access(p) - 1];
            if (p % kSample == 0)
                std::copy(cnt.begin(), cnt.end(), samples_.begin() + (p / kSample - 1) * sigma_);
        }
    }

    BitBuffer data_;
    std::vector<uint64_t> samples_;  // cumulative counts at block ends
    size_t n_ = 0;
    uint32_t sigma_ = 0;
    unsigned width_ = 1;
};

/// How a structure picks its bitmap / sequence representation per node.
enum class Backend : uint8_t {
    Plain = 0,
    Rrr = 1,
    Gcc = 2,        // grammar-compressed bitmaps
    Delta = 3,
    LeastSpace = 4  // per node, whichever of the above is smallest
};

inline BitVecPtr make_bitvec(Backend be, const std::vector<bool>& bits);  // gcc.hpp

}  // namespace gcrs
