#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "bitvector.hpp"
#include "io.hpp"

namespace gcrs {

/// Directly Addressable Codes: each value is split into chunks from least to
/// most significant; layer l concatenates the l-th chunks of all values that
/// have one, with a continuation bitmap B_l (1 = value continues upward).
class DacArray {
   public:
    DacArray() = default;

    explicit DacArray(const std::vector<uint64_t>& values, unsigned width = 4)
        : DacArray(values, std::vector<unsigned>(layers_for(values, width), width)) {}

    DacArray(const std::vector<uint64_t>& values, const std::vector<unsigned>& widths) {
        for (unsigned w : widths)
            if (w == 0) throw std::invalid_argument("DacArray: zero chunk width");
        if (widths.empty()) throw std::invalid_argument("DacArray: no layers");
        n_ = values.size();
        widths_ = widths;
        std::vector<uint64_t> cur(values);
        for (size_t l = 0; l < widths_.size() && !cur.empty(); ++l) {
            unsigned b = widths_[l];
            BitBuffer payload;
            std::vector<bool> cont(cur.size());
            std::vector<uint64_t> next;
            for (size_t i = 0; i < cur.size(); ++i) {
                uint64_t chunk = b >= 64 ? cur[i] : cur[i] & ((uint64_t(1) << b) - 1);
                uint64_t rest = b >= 64 ? 0 : cur[i] >> b;
                payload.append_bits(chunk, b);
                cont[i] = rest != 0;
                if (cont[i]) next.push_back(rest);
            }
            if (l + 1 == widths_.size() && !next.empty())
                throw std::invalid_argument("DacArray: widths too narrow for values");
            payloads_.push_back(std::move(payload));
            conts_.emplace_back(cont);
            cur = std::move(next);
        }
        widths_.resize(payloads_.size());
        if (widths_.empty()) {  // n_ == 0
            widths_.push_back(widths[0]);
            payloads_.emplace_back();
            conts_.emplace_back(PlainBitmap(std::vector<bool>{}));
        }
    }

    size_t size() const { return n_; }
    size_t layers() const { return payloads_.size(); }
    const std::vector<unsigned>& widths() const { return widths_; }

    uint64_t access(size_t i) const {
        if (i < 1 || i > n_) throw std::out_of_range("DacArray::access");
        uint64_t v = 0;
        unsigned shift = 0;
        size_t idx = i;
        for (size_t l = 0; l < payloads_.size(); ++l) {
            unsigned b = widths_[l];
            v |= payloads_[l].read((idx - 1) * b, b) << shift;
            if (!conts_[l].access(idx)) break;
            shift += b;
            idx = conts_[l].rank1(idx);
        }
        return v;
    }

    size_t size_in_bits() const {
        size_t bits = 0;
        for (size_t l = 0; l < payloads_.size(); ++l)
            bits += payloads_[l].size_in_bits() + conts_[l].size_in_bits();
        return bits;
    }

    /// Payload-only size: sum over layers of entries * (width + 1).
    size_t payload_bits() const {
        size_t bits = 0;
        for (size_t l = 0; l < payloads_.size(); ++l)
            bits += conts_[l].size() * (widths_[l] + 1);
        return bits;
    }

    void save(std::ostream& os) const {
        write_u64(os, n_);
        write_u64(os, payloads_.size());
        for (size_t l = 0; l < payloads_.size(); ++l) {
            write_u64(os, widths_[l]);
            payloads_[l].save(os);
            conts_[l].save(os);
        }
    }
    static DacArray load(std::istream& is) {
        DacArray d;
        d.n_ = read_u64(is);
        size_t layers = read_u64(is);
        for (size_t l = 0; l < layers; ++l) {
            d.widths_.push_back(static_cast<unsigned>(read_u64(is)));
            d.payloads_.push_back(BitBuffer::load(is));
            d.conts_.push_back(PlainBitmap::load(is));
        }
        return d;
    }

    /// Per-layer widths minimizing total payload bits for the given values,
    /// with at most max_layers layers. Dynamic program over the bit-length
    /// histogram of the values.
    static std::vector<unsigned> optimize_widths(const std::vector<uint64_t>& values,
                                                 unsigned max_layers) {
        if (max_layers < 1) throw std::invalid_argument("optimize_widths: max_layers < 1");
        unsigned maxlen = 1;
        for (uint64_t v : values) maxlen = std::max(maxlen, std::max(1u, bit_length(v)));
        // n_ge[p] = how many values still need chunks once p bits are consumed
        std::vector<uint64_t> n_ge(maxlen + 1, 0);
        for (uint64_t v : values) {
            unsigned len = std::max(1u, bit_length(v));
            for (unsigned p = 0; p < len; ++p) ++n_ge[p];
        }
        constexpr uint64_t kInf = std::numeric_limits<uint64_t>::max() / 2;
        // best[p][k] = min bits to encode remaining bits [p, maxlen) in k layers
        std::vector<std::vector<uint64_t>> best(maxlen + 1,
                                                std::vector<uint64_t>(max_layers + 1, kInf));
        std::vector<std::vector<unsigned>> pick(maxlen + 1,
                                                std::vector<unsigned>(max_layers + 1, 0));
        for (unsigned k = 0; k <= max_layers; ++k) best[maxlen][k] = 0;
        for (unsigned p = maxlen; p-- > 0;) {
            for (unsigned k = 1; k <= max_layers; ++k) {
                for (unsigned b = 1; p + b <= maxlen; ++b) {
                    uint64_t cost = n_ge[p] * (b + 1) + best[p + b][k - 1];
                    if (cost < best[p][k]) {
                        best[p][k] = cost;
                        pick[p][k] = b;
                    }
                }
            }
        }
        std::vector<unsigned> widths;
        unsigned p = 0, k = max_layers;
        while (p < maxlen) {
            unsigned b = pick[p][k];
            if (b == 0) throw std::logic_error("optimize_widths: infeasible");
            widths.push_back(b);
            p += b;
            --k;
        }
        return widths;
    }

   private:
    static size_t layers_for(const std::vector<uint64_t>& values, unsigned width) {
        unsigned maxlen = 1;
        for (uint64_t v : values) maxlen = std::max(maxlen, std::max(1u, bit_length(v)));
        return (maxlen + width - 1) / width;
    }

    std::vector<BitBuffer> payloads_;
    std::vector<PlainBitmap> conts_;
    std::vector<unsigned> widths_;
    size_t n_ = 0;
};

}  // namespace gcrs
