#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "appart.hpp"
#include "backend.hpp"
#include "gcc.hpp"
#include "wavelet.hpp"

namespace gcrs {

/// Suffix array by prefix doubling with counting sorts.
inline std::vector<uint32_t> suffix_array(const std::vector<uint32_t>& s) {
    size_t n = s.size();
    if (n == 0) return {};
    std::vector<uint32_t> sa(n), rnk(n), tmp(n);
    uint32_t maxv = 0;
    for (uint32_t x : s) maxv = std::max(maxv, x);
    {
        std::vector<uint32_t> cnt(size_t(maxv) + 2, 0);
        for (uint32_t x : s) ++cnt[x + 1];
        for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
        for (uint32_t i = 0; i < n; ++i) sa[cnt[s[i]]++] = i;
        rnk[sa[0]] = 0;
        for (size_t i = 1; i < n; ++i)
            rnk[sa[i]] = rnk[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]] ? 1 : 0);
    }
    for (size_t k = 1; k < n && rnk[sa[n - 1]] + 1 < n; k <<= 1) {
        std::vector<uint32_t> order;  // sorted by the second key
        order.reserve(n);
        for (size_t i = n - k; i < n; ++i) order.push_back(static_cast<uint32_t>(i));
        for (uint32_t i : sa)
            if (i >= k) order.push_back(i - k);
        std::vector<uint32_t> cnt(size_t(rnk[sa[n - 1]]) + 2, 0);
        for (size_t i = 0; i < n; ++i) ++cnt[rnk[i] + 1];
        for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
        for (uint32_t i : order) sa[cnt[rnk[i]]++] = i;
        auto key = [&](uint32_t i) {
            return std::pair<uint32_t, uint32_t>(rnk[i], i + k < n ? rnk[i + k] + 1 : 0);
        };
        tmp[sa[0]] = 0;
        for (size_t i = 1; i < n; ++i)
            tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i]) != key(sa[i - 1]) ? 1 : 0);
        rnk.swap(tmp);
    }
    return sa;
}

struct BwtStats {
    uint64_t runs = 0;
    double ratio = 0.0;  // runs / original text length
};

enum class FmBackend : uint8_t { Gcc = 0, ApRp = 1, WthRrr = 2 };

/// FM-index supporting count() via backward search on a BWT held in a
/// pluggable rank/select structure. A fresh smallest terminator is appended,
/// so the BWT alphabet is sigma+1 with the terminator mapped to 1.
class FmIndex {
   public:
    FmIndex() = default;

    FmIndex(const std::vector<uint32_t>& text, uint32_t sigma, FmBackend be = FmBackend::Gcc)
        : sigma_(sigma), backend_(be) {
        if (text.empty()) throw std::invalid_argument("FmIndex: empty text");
        for (uint32_t x : text)
            if (x < 1 || x > sigma) throw std::invalid_argument("FmIndex: symbol out of range");
        size_t n = text.size();
        std::vector<uint32_t> t(n + 1);
        for (size_t i = 0; i < n; ++i) t[i] = text[i] + 1;
        t[n] = 1;  // terminator
        std::vector<uint32_t> sa = suffix_array(t);
        std::vector<uint32_t> bwt(n + 1);
        for (size_t i = 0; i <= n; ++i) bwt[i] = t[(sa[i] + n) % (n + 1)];
        build_from_bwt(bwt, be);
    }

    /// Text length (without the terminator).
    size_t size() const { return bwt_->size() - 1; }
    uint32_t sigma() const { return sigma_; }
    FmBackend backend() const { return backend_; }
    const Sequence& bwt() const { return *bwt_; }

    /// Number of occurrences of `pattern` in the text.
    uint64_t count(const std::vector<uint32_t>& pattern) const {
        if (pattern.empty()) throw std::invalid_argument("count: empty pattern");
        size_t sp = 1, ep = bwt_->size();
        for (size_t k = pattern.size(); k-- > 0;) {
            uint32_t a = pattern[k];
            if (a < 1 || a > sigma_) return 0;
            uint32_t b = a + 1;  // shifted alphabet
            sp = c_[b - 1] + bwt_->rank(b, sp - 1) + 1;
            ep = c_[b - 1] + bwt_->rank(b, ep);
            if (sp > ep) return 0;
        }
        return ep - sp + 1;
    }

    /// Reconstructs the text by repeated LF-stepping (identity check).
    std::vector<uint32_t> invert() const {
        size_t n = size();
        std::vector<uint32_t> out(n);
        size_t i = 1;  // row of the terminator-only suffix
        for (size_t k = n; k-- > 0;) {
            uint32_t b = bwt_->access(i);
            out[k] = b - 1;
            i = c_[b - 1] + bwt_->rank(b, i);
        }
        return out;
    }

    BwtStats stats() const {
        BwtStats st;
        uint32_t prev = 0;
        for (size_t i = 1; i <= bwt_->size(); ++i) {
            uint32_t b = bwt_->access(i);
            if (b != prev) ++st.runs;
            prev = b;
        }
        st.ratio = double(st.runs) / double(size());
        return st;
    }

    size_t size_in_bits() const { return bwt_->size_in_bits() + c_.size() * 64 + 128; }

    void save(std::ostream& os) const {
        write_u64(os, sigma_);
        write_u16(os, static_cast<uint16_t>(backend_));
        save_sequence(os, *bwt_);
    }
    static FmIndex load(std::istream& is) {
        FmIndex fm;
        fm.sigma_ = static_cast<uint32_t>(read_u64(is));
        fm.backend_ = static_cast<FmBackend>(read_u16(is));
        fm.bwt_ = load_sequence(is);
        fm.build_c();
        return fm;
    }

   private:
    void build_from_bwt(const std::vector<uint32_t>& bwt, FmBackend be) {
        uint32_t bs = sigma_ + 1;
        switch (be) {
            case FmBackend::Gcc:
                bwt_ = std::make_unique<GccIndex>(bwt, bs, GccConfig{.s = 1024, .delta = 1});
                break;
            case FmBackend::ApRp:
                bwt_ = std::make_unique<ApIndex>(
                    bwt, bs,
                    ApConfig{.cut = 3,
                             .cut_o = 1,
                             .k_backend = ApConfig::KBackend::Gcc,
                             .fallback = ApConfig::Fallback::WmRp});
                break;
            case FmBackend::WthRrr:
                bwt_ = std::make_unique<WaveletTree>(
                    bwt, bs, WaveletConfig{.huffman = true, .arity = 2, .backend = Backend::Rrr});
                break;
        }
        build_c();
    }
    void build_c() {
        uint32_t bs = sigma_ + 1;
        c_.assign(bs, 0);
        std::vector<uint64_t> freq(bs, 0);
        for (uint32_t b = 1; b <= bs; ++b) freq[b - 1] = bwt_->rank(b, bwt_->size());
        for (uint32_t b = 1; b < bs; ++b) c_[b] = c_[b - 1] + freq[b - 1];
    }

    uint32_t sigma_ = 0;
    FmBackend backend_ = FmBackend::Gcc;
    SequencePtr bwt_;
    std::vector<uint64_t> c_;  // symbols smaller than b in the BWT
};

}  // namespace gcrs
