#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "backend.hpp"
#include "gcc.hpp"
#include "wavelet.hpp"

namespace gcrs {

struct ApConfig {
    unsigned cut = 3;    // frequency ranks <= 2^cut are encoded directly in K
    unsigned cut_o = 0;  // first cut_o classes get grammar-compressed S_j
    enum class KBackend : uint8_t { WtRrr = 0, Gcc = 1 } k_backend = KBackend::WtRrr;
    enum class Fallback : uint8_t { WmPlain = 0, WmRp = 1 } fallback = Fallback::WmPlain;
};

/// Alphabet partitioning: symbols sorted by decreasing frequency; the top
/// 2^cut live directly in the class sequence K, the rest fall into
/// exponentially growing classes (rank t -> class floor(lg t)) with their
/// in-class id stored in a per-class subsequence S_j. M maps each symbol to
/// its class.
class ApIndex final : public Sequence {
   public:
    ApIndex() = default;

    ApIndex(const std::vector<uint32_t>& s, uint32_t sigma, ApConfig cfg = {})
        : n_(s.size()), sigma_(sigma), cfg_(cfg) {
        if (s.empty()) throw std::invalid_argument("ApIndex: empty input");
        for (uint32_t x : s)
            if (x < 1 || x > sigma) throw std::invalid_argument("ApIndex: symbol out of range");

        // frequency ranking, ties by symbol id
        std::vector<uint64_t> freq(sigma, 0);
        for (uint32_t x : s) ++freq[x - 1];
        std::vector<uint32_t> by_rank(sigma);
        for (uint32_t a = 0; a < sigma; ++a) by_rank[a] = a + 1;
        std::stable_sort(by_rank.begin(), by_rank.end(), [&](uint32_t a, uint32_t b) {
            return freq[a - 1] > freq[b - 1];
        });

        uint64_t ndir = std::min<uint64_t>(uint64_t(1) << cfg.cut, sigma);
        ndirect_ = ndir;
        // class of each symbol: direct ids 1..ndir by rank, then classes
        // floor(lg t); non-empty classes first in K's numbering
        std::vector<unsigned> cls_of_rank(sigma);  // log-class per non-direct rank
        std::vector<bool> cls_used;
        for (uint64_t t = ndir + 1; t <= sigma; ++t) {
            unsigned j = bit_length(t) - 1;  // floor(lg t)
            cls_of_rank[t - 1] = j;
            if (cls_used.size() <= j) cls_used.resize(j + 1, false);
            if (freq[by_rank[t - 1] - 1] > 0) cls_used[j] = true;
        }
        std::vector<int32_t> cls_id(cls_used.size(), -1);
        uint32_t next = 0;
        for (size_t j = 0; j < cls_used.size(); ++j)
            if (cls_used[j]) cls_id[j] = static_cast<int32_t>(next++);
        nclasses_ = next;
        for (size_t j = 0; j < cls_used.size(); ++j)  // empty classes numbered last
            if (!cls_used[j]) cls_id[j] = static_cast<int32_t>(next++);

        std::vector<uint32_t> m(sigma);  // M[a]
        for (uint64_t t = 1; t <= sigma; ++t) {
            uint32_t a = by_rank[t - 1];
            m[a - 1] = t <= ndir ? static_cast<uint32_t>(t)
                                 : static_cast<uint32_t>(ndir + 1 + cls_id[cls_of_rank[t - 1]]);
        }
        uint32_t sigma_m = ndir + next;
        m_ = std::make_unique<WaveletTree>(m, sigma_m, WaveletConfig{});

        // K and the subsequences
        std::vector<uint32_t> k(n_);
        std::vector<std::vector<uint32_t>> subs(nclasses_);
        std::vector<uint32_t> local(sigma, 0);  // v = rank_{M[a]}(M, a)
        {
            std::vector<std::vector<uint32_t>> members(nclasses_);
            for (uint32_t a = 1; a <= sigma; ++a)
                if (m[a - 1] > ndir && m[a - 1] <= ndir + nclasses_)
                    members[m[a - 1] - ndir - 1].push_back(a);
            for (auto& mem : members) {  // already ascending by symbol id
                for (size_t v = 0; v < mem.size(); ++v) local[mem[v] - 1] = v + 1;
            }
        }
        for (size_t i = 0; i < n_; ++i) {
            uint32_t j = m[s[i] - 1];
            k[i] = j;
            if (j > ndir) subs[j - ndir - 1].push_back(local[s[i] - 1]);
        }
        uint32_t sigma_k = ndir + nclasses_;
        if (cfg.k_backend == ApConfig::KBackend::Gcc)
            k_ = std::make_unique<GccIndex>(k, sigma_k, GccConfig{.s = 1024, .delta = 1});
        else
            k_ = std::make_unique<WaveletTree>(
                k, sigma_k, WaveletConfig{.huffman = false, .arity = 2, .backend = Backend::Rrr});

        for (uint32_t c = 0; c < nclasses_; ++c) {
            uint32_t sub_sigma = 0;
            for (uint32_t v : subs[c]) sub_sigma = std::max(sub_sigma, v);
            if (c < cfg.cut_o) {
                subs_.push_back(std::make_unique<GccIndex>(subs[c], sub_sigma,
                                                           GccConfig{.s = 1024, .delta = 1}));
            } else {
                Backend be = cfg.fallback == ApConfig::Fallback::WmRp ? Backend::LeastSpace
                                                                      : Backend::Plain;
                subs_.push_back(std::make_unique<WaveletMatrix>(
                    subs[c], sub_sigma, WaveletConfig{.huffman = false, .arity = 2, .backend = be}));
            }
        }
        build_direct();
    }

    size_t size() const override { return n_; }
    uint32_t sigma() const override { return sigma_; }
    SeqKind kind() const override { return SeqKind::Ap; }
    const ApConfig& config() const { return cfg_; }

    uint32_t access(size_t i) const override {
        check_access(i);
        uint32_t j = k_->access(i);
        if (j <= ndirect_) return direct_sym_[j - 1];
        uint32_t v = static_cast<uint32_t>(subs_[j - ndirect_ - 1]->access(k_->rank(j, i)));
        return static_cast<uint32_t>(m_->select(j, v));
    }

    size_t rank(uint32_t a, size_t i) const override {
        check_rank(a, i);
        if (i == 0) return 0;
        uint32_t j = m_->access(a);
        if (j <= ndirect_) return k_->rank(j, i);
        if (j > ndirect_ + nclasses_) return 0;  // empty class: a never occurs
        uint32_t v = static_cast<uint32_t>(m_->rank(j, a));
        const Sequence& sj = *subs_[j - ndirect_ - 1];
        if (v > sj.sigma()) return 0;
        return sj.rank(v, k_->rank(j, i));
    }

    size_t select(uint32_t a, size_t j) const override {
        check_symbol(a);
        if (j == 0) return 0;
        uint32_t cls = m_->access(a);
        if (cls <= ndirect_) return k_->select(cls, j);
        if (cls > ndirect_ + nclasses_) throw std::out_of_range("select: occurrence index");
        uint32_t v = static_cast<uint32_t>(m_->rank(cls, a));
        const Sequence& sj = *subs_[cls - ndirect_ - 1];
        if (v > sj.sigma()) throw std::out_of_range("select: occurrence index");
        return k_->select(cls, sj.select(v, j));
    }

    size_t size_in_bits() const override {
        size_t bits = 256 + m_->size_in_bits() + k_->size_in_bits();
        for (const auto& s : subs_) bits += s->size_in_bits();
        return bits;
    }

    void save(std::ostream& os) const override {
        write_u64(os, n_);
        write_u64(os, sigma_);
        write_u16(os, cfg_.cut);
        write_u16(os, cfg_.cut_o);
        write_u16(os, static_cast<uint16_t>(cfg_.k_backend));
        write_u16(os, static_cast<uint16_t>(cfg_.fallback));
        write_u64(os, ndirect_);
        write_u64(os, nclasses_);
        save_sequence(os, *m_);
        save_sequence(os, *k_);
        for (const auto& s : subs_) save_sequence(os, *s);
    }
    static SequencePtr load(std::istream& is) {
        auto ap = std::make_unique<ApIndex>();
        ap->n_ = read_u64(is);
        ap->sigma_ = static_cast<uint32_t>(read_u64(is));
        ap->cfg_.cut = read_u16(is);
        ap->cfg_.cut_o = read_u16(is);
        ap->cfg_.k_backend = static_cast<ApConfig::KBackend>(read_u16(is));
        ap->cfg_.fallback = static_cast<ApConfig::Fallback>(read_u16(is));
        ap->ndirect_ = read_u64(is);
        ap->nclasses_ = static_cast<uint32_t>(read_u64(is));
        ap->m_ = load_sequence(is);
        ap->k_ = load_sequence(is);
        for (uint32_t c = 0; c < ap->nclasses_; ++c) ap->subs_.push_back(load_sequence(is));
        ap->build_direct();
        return ap;
    }

    const Sequence& class_seq() const { return *k_; }
    const Sequence& mapping() const { return *m_; }
    size_t num_classes() const { return nclasses_; }

   private:
    void build_direct() {
        direct_sym_.resize(ndirect_, 0);
        for (uint64_t j = 1; j <= ndirect_; ++j)
            direct_sym_[j - 1] = static_cast<uint32_t>(m_->select(static_cast<uint32_t>(j), 1));
    }

    size_t n_ = 0;
    uint32_t sigma_ = 0;
    ApConfig cfg_;
    uint64_t ndirect_ = 0;   // direct pseudo-classes in K
    uint32_t nclasses_ = 0;  // non-empty multi-symbol classes
    SequencePtr m_;          // symbol -> class, length sigma
    SequencePtr k_;          // class per position, length n
    std::vector<SequencePtr> subs_;        // in-class ids per class
    std::vector<uint32_t> direct_sym_;     // class id -> symbol, for the fast path
};

}  // namespace gcrs
