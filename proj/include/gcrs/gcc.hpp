#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "backend.hpp"
#include "dac.hpp"
#include "repair.hpp"

namespace gcrs {

enum class GccMode : uint8_t { N = 0, C = 1 };

struct GccConfig {
    GccMode mode = GccMode::N;
    uint64_t s = 1024;     // sample period (over S for N, over C for C)
    uint64_t sprime = 8;   // superblock period over sample indices (N only)
    unsigned delta = 0;    // counter expansion budget; 0 = sample every rule
    bool balanced = true;
};

struct GccSpace {
    size_t grammar = 0;
    size_t counters = 0;
    size_t samples = 0;
    size_t total() const { return grammar + counters + samples; }
};

/// Grammar-compressed sequence with rank/select: balanced RePair grammar,
/// per-rule length and per-symbol counters (stored only for rules marked in
/// B_d, so resolving any rule expands at most 2*delta unmarked ones), and
/// regular position samples over S (mode N, two-layer) or over C (mode C).
class GccIndex final : public Sequence {
   public:
    GccIndex() = default;

    GccIndex(const std::vector<uint32_t>& s, uint32_t sigma, GccConfig cfg = {})
        : GccIndex(repair_compress(s, sigma, cfg.balanced), cfg) {}

    GccIndex(Grammar g, GccConfig cfg) : cfg_(cfg), g_(std::move(g)) {
        if (cfg_.s < 1) throw std::invalid_argument("GccIndex: s < 1");
        if (cfg_.sprime < 1) throw std::invalid_argument("GccIndex: sprime < 1");
        build_counters();
        build_samples();
    }

    size_t size() const override { return g_.n; }
    uint32_t sigma() const override { return g_.sigma; }
    SeqKind kind() const override { return cfg_.mode == GccMode::N ? SeqKind::GccN : SeqKind::GccC; }
    const GccConfig& config() const { return cfg_; }
    const Grammar& grammar() const { return g_; }

    /// Length of exp(x); counts unmarked rules visited in *visits if given.
    uint64_t resolve_length(uint32_t x, size_t* visits = nullptr) const {
        g_.check_symbol(x);
        if (g_.is_terminal(x)) return 1;
        if (sampled_.access(x)) return s_len_.access(row_of(x));
        if (visits) ++*visits;
        return resolve_length(g_.left(x), visits) + resolve_length(g_.right(x), visits);
    }

    /// Occurrences of a in exp(x).
    uint64_t resolve_count(uint32_t x, uint32_t a, size_t* visits = nullptr) const {
        g_.check_symbol(x);
        check_symbol(a);
        if (g_.is_terminal(x)) return x == a ? 1 : 0;
        if (sampled_.access(x)) return s_cnt_[a - 1].access(row_of(x));
        if (visits) ++*visits;
        return resolve_count(g_.left(x), a, visits) + resolve_count(g_.right(x), a, visits);
    }

    uint32_t access(size_t i) const override {
        check_access(i);
        Cursor c = cursor_at(i);
        scan_to(c, i, 0);
        return descend(c, i, 0).first;
    }

    size_t rank(uint32_t a, size_t i) const override {
        check_rank(a, i);
        if (i == 0) return 0;
        Cursor c = cursor_at(i);
        c.cnt = c.lrnk_a(*this, a);
        scan_to(c, i, a);
        auto [term, cnt] = descend(c, i, a);
        return cnt + (term == a ? 1 : 0);
    }

    size_t select(uint32_t a, size_t j) const override {
        check_symbol(a);
        if (j == 0) return 0;
        Cursor c = cursor_before(a, j);
        while (c.p < g_.seq.size()) {
            uint64_t cb = resolve_count(g_.seq[c.p], a);
            if (c.cnt + cb >= j) break;
            c.cnt += cb;
            c.pos += resolve_length(g_.seq[c.p]);
            ++c.p;
        }
        if (c.p >= g_.seq.size()) throw std::out_of_range("select: occurrence index");
        uint32_t x = g_.seq[c.p];
        while (!g_.is_terminal(x)) {
            uint32_t y = g_.left(x), z = g_.right(x);
            uint64_t cy = resolve_count(y, a);
            if (c.cnt + cy >= j) {
                x = y;
            } else {
                c.cnt += cy;
                c.pos += resolve_length(y);
                x = z;
            }
        }
        return c.pos + 1;
    }

    GccSpace space() const {
        GccSpace sp;
        sp.grammar = g_.size_in_bits();
        sp.counters = sampled_.size_in_bits() + s_len_.size_in_bits();
        for (const auto& d : s_cnt_) sp.counters += d.size_in_bits();
        sp.samples = ss_p_.size() * 64 + ss_lrnk_.size() * 64;
        sp.samples += sp_p_.size_in_bits() + sp_o_.size_in_bits() + sp_lrnk_.size_in_bits();
        sp.samples += c_start_.size() * 64 + c_lrnk_.size_in_bits();
        return sp;
    }
    size_t size_in_bits() const override { return space().total() + 256; }

    void save(std::ostream& os) const override {
        write_u16(os, static_cast<uint16_t>(cfg_.mode));
        write_u16(os, cfg_.balanced ? 1 : 0);
        write_u64(os, cfg_.s);
        write_u64(os, cfg_.sprime);
        write_u64(os, cfg_.delta);
        g_.save(os);
        sampled_.save(os);
        s_len_.save(os);
        for (const auto& d : s_cnt_) d.save(os);
        if (cfg_.mode == GccMode::N) {
            write_u64(os, num_samples_);
            write_vec(os, ss_p_);
            write_vec(os, ss_lrnk_);
            sp_p_.save(os);
            sp_o_.save(os);
            sp_lrnk_.save(os);
        } else {
            write_vec(os, c_start_);
            c_lrnk_.save(os);
        }
    }

    static GccIndex load_plain(std::istream& is) {
        GccIndex ix;
        ix.cfg_.mode = static_cast<GccMode>(read_u16(is));
        ix.cfg_.balanced = read_u16(is) != 0;
        ix.cfg_.s = read_u64(is);
        ix.cfg_.sprime = read_u64(is);
        ix.cfg_.delta = static_cast<unsigned>(read_u64(is));
        ix.g_ = Grammar::load(is);
        ix.sampled_ = PlainBitmap::load(is);
        ix.s_len_ = DacArray::load(is);
        ix.s_cnt_.resize(ix.g_.sigma);
        for (auto& d : ix.s_cnt_) d = DacArray::load(is);
        if (ix.cfg_.mode == GccMode::N) {
            ix.num_samples_ = read_u64(is);
            ix.ss_p_ = read_vec<uint64_t>(is);
            ix.ss_lrnk_ = read_vec<uint64_t>(is);
            ix.sp_p_ = DacArray::load(is);
            ix.sp_o_ = DacArray::load(is);
            ix.sp_lrnk_ = DacArray::load(is);
        } else {
            ix.c_start_ = read_vec<uint64_t>(is);
            ix.c_lrnk_ = DacArray::load(is);
        }
        return ix;
    }
    static SequencePtr load(std::istream& is) {
        return std::make_unique<GccIndex>(load_plain(is));
    }

   private:
    struct Cursor {
        size_t p = 0;      // current index into C
        uint64_t pos = 0;  // symbols of S strictly before exp(C[p])
        uint64_t cnt = 0;  // occurrences of the query symbol before pos+1
        size_t sample = 0; // 0 = implicit start-of-sequence sample

        uint64_t lrnk_a(const GccIndex& ix, uint32_t a) const {
            return sample == 0 ? 0 : ix.sample_lrnk(sample, a);
        }
    };

    size_t row_of(uint32_t x) const { return sampled_.rank1(x) - g_.sigma; }

    // --- construction ---

    void build_counters() {
        uint32_t sigma = g_.sigma;
        size_t nrules = g_.rules.size();
        uint64_t r = g_.num_symbols();

        // delta marking: cost(X) = 0 if marked, else 1 + cost(Y) + cost(Z);
        // mark whenever that sum would exceed 2*delta
        std::vector<uint64_t> cost(nrules, 0);
        std::vector<bool> mark(r, false);
        for (uint32_t a = 1; a <= sigma; ++a) mark[a - 1] = true;
        auto cost_of = [&](uint32_t v) { return g_.is_terminal(v) ? 0 : cost[v - sigma - 1]; };
        for (size_t k = 0; k < nrules; ++k) {
            uint64_t c = 1 + cost_of(g_.rules[k].first) + cost_of(g_.rules[k].second);
            if (c > 2 * uint64_t(cfg_.delta)) {
                mark[sigma + k] = true;
                cost[k] = 0;
            } else {
                cost[k] = c;
            }
        }
        sampled_ = PlainBitmap(mark);

        std::vector<uint64_t> len(nrules);
        auto len_of = [&](uint32_t v) { return g_.is_terminal(v) ? 1 : len[v - sigma - 1]; };
        for (size_t k = 0; k < nrules; ++k)
            len[k] = len_of(g_.rules[k].first) + len_of(g_.rules[k].second);

        // symbol counts for marked rules: sparse per-rule vectors, freed once
        // the last referencing rule has been processed
        std::vector<uint32_t> last_use(nrules, 0);
        for (size_t k = 0; k < nrules; ++k) {
            uint32_t x = sigma + static_cast<uint32_t>(k) + 1;
            for (uint32_t ch : {g_.rules[k].first, g_.rules[k].second})
                if (!g_.is_terminal(ch)) last_use[ch - sigma - 1] = x;
        }

        using Sparse = std::vector<std::pair<uint32_t, uint64_t>>;
        std::vector<Sparse> counts(nrules);
        std::vector<uint64_t> marked_len;
        std::vector<std::vector<std::pair<size_t, uint64_t>>> col_ent(sigma);
        size_t rows = 0;
        auto merge_in = [&](Sparse& dst, uint32_t ch) {
            if (g_.is_terminal(ch)) {
                auto it = std::lower_bound(dst.begin(), dst.end(), ch,
                                           [](const auto& e, uint32_t v) { return e.first < v; });
                if (it != dst.end() && it->first == ch)
                    ++it->second;
                else
                    dst.insert(it, {ch, 1});
                return;
            }
            const Sparse& src = counts[ch - sigma - 1];
            Sparse out;
            out.reserve(dst.size() + src.size());
            std::merge(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
            dst.clear();
            for (auto& e : out) {
                if (!dst.empty() && dst.back().first == e.first)
                    dst.back().second += e.second;
                else
                    dst.push_back(e);
            }
        };
        for (size_t k = 0; k < nrules; ++k) {
            uint32_t x = sigma + static_cast<uint32_t>(k) + 1;
            Sparse& c = counts[k];
            merge_in(c, g_.rules[k].first);
            merge_in(c, g_.rules[k].second);
            if (mark[x - 1]) {
                marked_len.push_back(len[k]);
                for (auto [a, cc] : c) col_ent[a - 1].push_back({rows, cc});
                ++rows;
            }
            for (uint32_t ch : {g_.rules[k].first, g_.rules[k].second})
                if (!g_.is_terminal(ch) && last_use[ch - sigma - 1] == x) {
                    counts[ch - sigma - 1].clear();
                    counts[ch - sigma - 1].shrink_to_fit();
                }
        }
        s_len_ = DacArray(marked_len, 4);
        s_cnt_.reserve(sigma);
        std::vector<uint64_t> col;
        for (uint32_t a = 1; a <= sigma; ++a) {
            col.assign(rows, 0);
            for (auto [row, cc] : col_ent[a - 1]) col[row] = cc;
            s_cnt_.emplace_back(col, 4);
            col_ent[a - 1].clear();
            col_ent[a - 1].shrink_to_fit();
        }
    }

    void build_samples() {
        uint32_t sigma = g_.sigma;
        size_t c = g_.seq.size();
        std::vector<uint64_t> blen(c);
        for (size_t p = 0; p < c; ++p) blen[p] = resolve_length(g_.seq[p]);

        std::vector<uint64_t> cnt(sigma, 0);
        std::vector<uint32_t> stack;
        auto expand_block = [&](uint32_t x) {
            stack.push_back(x);
            while (!stack.empty()) {
                uint32_t v = stack.back();
                stack.pop_back();
                if (g_.is_terminal(v)) {
                    ++cnt[v - 1];
                } else {
                    stack.push_back(g_.right(v));
                    stack.push_back(g_.left(v));
                }
            }
        };

        if (cfg_.mode == GccMode::N) {
            num_samples_ = g_.n / cfg_.s;
            std::vector<uint64_t> dp, dpos, dlrnk;
            uint64_t start = 1;  // L(p)
            size_t k = 1;
            for (size_t p = 0; p < c && k <= num_samples_; ++p) {
                uint64_t end = start + blen[p];  // exclusive
                while (k <= num_samples_ && k * cfg_.s < end) {
                    // sample k sits inside exp(C[p]) at offset k*s - start
                    if ((k - 1) % cfg_.sprime == 0) {
                        ss_p_.push_back(p);
                        ss_lrnk_.insert(ss_lrnk_.end(), cnt.begin(), cnt.end());
                    }
                    size_t j = (k - 1) / cfg_.sprime;
                    dp.push_back(p - ss_p_[j]);
                    dpos.push_back(k * cfg_.s - start);
                    for (uint32_t a = 0; a < sigma; ++a)
                        dlrnk.push_back(cnt[a] - ss_lrnk_[j * sigma + a]);
                    ++k;
                }
                expand_block(g_.seq[p]);
                start = end;
            }
            sp_p_ = DacArray(dp, 4);
            sp_o_ = DacArray(dpos, 4);
            sp_lrnk_ = DacArray(dlrnk, 4);
        } else {
            std::vector<uint64_t> dlrnk;
            uint64_t start = 1;
            for (size_t p = 0; p < c; ++p) {
                if (p > 0 && p % cfg_.s == 0) {
                    c_start_.push_back(start);
                    dlrnk.insert(dlrnk.end(), cnt.begin(), cnt.end());
                }
                expand_block(g_.seq[p]);
                start += blen[p];
            }
            c_lrnk_ = DacArray(dlrnk, 4);
        }
    }

    // --- query plumbing ---

    uint64_t sample_p(size_t k) const {
        return ss_p_[(k - 1) / cfg_.sprime] + sp_p_.access(k);
    }
    uint64_t sample_o(size_t k) const { return sp_o_.access(k); }
    uint64_t sample_lrnk(size_t k, uint32_t a) const {
        if (cfg_.mode == GccMode::C) return c_lrnk_.access((k - 1) * g_.sigma + a);
        return ss_lrnk_[((k - 1) / cfg_.sprime) * g_.sigma + a - 1] +
               sp_lrnk_.access((k - 1) * g_.sigma + a);
    }

    /// Cursor at the governing sample for position i (cnt left at 0).
    Cursor cursor_at(size_t i) const {
        Cursor cur;
        if (cfg_.mode == GccMode::N) {
            size_t k = i / cfg_.s;
            if (k == 0) return cur;
            cur.sample = k;
            cur.p = sample_p(k);
            cur.pos = k * cfg_.s - sample_o(k) - 1;  // = L(p) - 1
        } else {
            // largest record with start position <= i
            size_t lo = 0, hi = c_start_.size();
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (c_start_[mid] <= i)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo == 0) return cur;
            cur.sample = lo;
            cur.p = lo * cfg_.s;
            cur.pos = c_start_[lo - 1] - 1;
        }
        return cur;
    }

    /// Cursor at the last sample whose lrnk[a] < j, with cnt = that lrnk.
    Cursor cursor_before(uint32_t a, size_t j) const {
        Cursor cur;
        size_t total = cfg_.mode == GccMode::N ? num_samples_ : c_start_.size();
        size_t best = 0;
        if (cfg_.mode == GccMode::N) {
            // superblock anchors first, then the few samples inside the block
            size_t nblocks = ss_p_.size();
            size_t lo = 0, hi = nblocks;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (ss_lrnk_[mid * g_.sigma + a - 1] < j)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo > 0) {
                size_t first = (lo - 1) * cfg_.sprime + 1;
                size_t last = std::min(total, lo * cfg_.sprime);
                for (size_t k = first; k <= last && sample_lrnk(k, a) < j; ++k) best = k;
            }
        } else {
            size_t lo = 0, hi = total;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (sample_lrnk(mid + 1, a) < j)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            best = lo;
        }
        if (best == 0) return cur;
        cur.sample = best;
        cur.cnt = sample_lrnk(best, a);
        if (cfg_.mode == GccMode::N) {
            cur.p = sample_p(best);
            cur.pos = best * cfg_.s - sample_o(best) - 1;
        } else {
            cur.p = best * cfg_.s;
            cur.pos = c_start_[best - 1] - 1;
        }
        return cur;
    }

    /// Advance over whole blocks of C while they end before i, accumulating
    /// counts of a (a = 0 for access).
    void scan_to(Cursor& c, size_t i, uint32_t a) const {
        while (c.p < g_.seq.size()) {
            uint64_t l = resolve_length(g_.seq[c.p]);
            if (c.pos + l >= i) break;
            if (a) c.cnt += resolve_count(g_.seq[c.p], a);
            c.pos += l;
            ++c.p;
        }
    }

    /// Walk down C[p] to the terminal at position i; returns it plus the
    /// count of a in S[1..i-1] relative to the cursor.
    std::pair<uint32_t, uint64_t> descend(const Cursor& c, size_t i, uint32_t a) const {
        uint32_t x = g_.seq[c.p];
        uint64_t rem = i - c.pos;  // 1-based offset into exp(x)
        uint64_t cnt = c.cnt;
        while (!g_.is_terminal(x)) {
            uint32_t y = g_.left(x);
            uint64_t ly = resolve_length(y);
            if (rem <= ly) {
                x = y;
            } else {
                if (a) cnt += resolve_count(y, a);
                rem -= ly;
                x = g_.right(x);
            }
        }
        return {x, cnt};
    }

    GccConfig cfg_;
    Grammar g_;

    PlainBitmap sampled_;            // B_d over symbol ids (terminals marked)
    DacArray s_len_;                 // lengths of marked rules
    std::vector<DacArray> s_cnt_;    // per symbol, counts for marked rules

    // mode N: two-layer samples
    uint64_t num_samples_ = 0;
    std::vector<uint64_t> ss_p_;     // absolute C index per superblock
    std::vector<uint64_t> ss_lrnk_;  // absolute ranks, row-major sigma
    DacArray sp_p_, sp_o_, sp_lrnk_;

    // mode C: one record per s-th C entry
    std::vector<uint64_t> c_start_;  // start position in S (strictly increasing)
    DacArray c_lrnk_;                // row-major sigma
};

/// sigma=2 grammar-compressed bitmap: bit 0 -> symbol 1, bit 1 -> symbol 2.
class GccBitVec final : public BitVec {
   public:
    GccBitVec() = default;
    explicit GccBitVec(const std::vector<bool>& bits, GccConfig cfg = {.s = 1024, .delta = 1}) {
        if (bits.empty()) return;
        std::vector<uint32_t> s(bits.size());
        for (size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? 2 : 1;
        ix_ = std::make_unique<GccIndex>(s, 2, cfg);
    }
    explicit GccBitVec(GccIndex ix) : ix_(std::make_unique<GccIndex>(std::move(ix))) {}

    size_t size() const override { return ix_ ? ix_->size() : 0; }
    bool access(size_t i) const override { return ix_->access(i) == 2; }
    size_t rank1(size_t i) const override { return i == 0 ? 0 : ix_->rank(2, i); }
    size_t select1(size_t j) const override { return j == 0 ? 0 : ix_->select(2, j); }
    size_t select0(size_t j) const override { return j == 0 ? 0 : ix_->select(1, j); }
    size_t size_in_bits() const override { return ix_ ? ix_->size_in_bits() : 64; }
    BitVecKind kind() const override { return BitVecKind::GccBit; }
    void save(std::ostream& os) const override {
        write_u16(os, ix_ ? 1 : 0);
        if (ix_) ix_->save(os);
    }
    static BitVecPtr load(std::istream& is) {
        auto bv = std::make_unique<GccBitVec>();
        if (read_u16(is)) bv->ix_ = std::make_unique<GccIndex>(GccIndex::load_plain(is));
        return bv;
    }

   private:
    std::unique_ptr<GccIndex> ix_;
};

inline BitVecPtr make_bitvec(Backend be, const std::vector<bool>& bits) {
    switch (be) {
        case Backend::Plain:
            return std::make_unique<PlainBitVec>(bits);
        case Backend::Rrr:
            return std::make_unique<RrrBitVec>(bits);
        case Backend::Delta:
            return std::make_unique<DeltaBitVec>(bits);
        case Backend::Gcc:
            return std::make_unique<GccBitVec>(bits);
        case Backend::LeastSpace: {
            BitVecPtr best = std::make_unique<PlainBitVec>(bits);
            for (Backend cand : {Backend::Rrr, Backend::Gcc}) {
                BitVecPtr alt = make_bitvec(cand, bits);
                if (alt->size_in_bits() < best->size_in_bits()) best = std::move(alt);
            }
            return best;
        }
    }
    throw std::invalid_argument("make_bitvec: bad backend");
}

inline BitVecPtr load_bitvec(std::istream& is) {
    switch (static_cast<BitVecKind>(read_u16(is))) {
        case BitVecKind::Plain:
            return PlainBitVec::load(is);
        case BitVecKind::Rrr:
            return RrrBitVec::load(is);
        case BitVecKind::Delta:
            return DeltaBitVec::load(is);
        case BitVecKind::GccBit:
            return GccBitVec::load(is);
    }
    throw std::runtime_error("load_bitvec: unknown kind");
}

}  // namespace gcrs
