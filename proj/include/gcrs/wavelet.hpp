#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "backend.hpp"
#include "gcc.hpp"
#include "huffman.hpp"

namespace gcrs {

struct WaveletConfig {
    bool huffman = false;
    unsigned arity = 2;              // power of two
    Backend backend = Backend::Plain;
    unsigned gcc_level_cut = 0;      // levels < cut forced to grammar backend
    Backend effective(unsigned level) const {
        return level < gcc_level_cut ? Backend::Gcc : backend;
    }
};

class WaveletMatrix;
SequencePtr build_node_seq(Backend be, const std::vector<uint32_t>& s, uint32_t sigma);

/// Pointer-based wavelet tree (binary or 2^b-ary, balanced or code-shaped).
/// Internal nodes hold the digit sequence of positions passing through them;
/// leaves pin down one symbol each.
class WaveletTree final : public Sequence {
   public:
    WaveletTree() = default;

    WaveletTree(const std::vector<uint32_t>& s, uint32_t sigma, WaveletConfig cfg = {})
        : n_(s.size()), sigma_(sigma), cfg_(cfg) {
        if (s.empty()) throw std::invalid_argument("WaveletTree: empty input");
        if (sigma < 1) throw std::invalid_argument("WaveletTree: sigma < 1");
        if (cfg.arity < 2 || (cfg.arity & (cfg.arity - 1)))
            throw std::invalid_argument("WaveletTree: arity must be a power of two >= 2");
        for (uint32_t x : s)
            if (x < 1 || x > sigma) throw std::invalid_argument("WaveletTree: symbol out of range");
        std::vector<uint64_t> freqs(sigma, 0);
        for (uint32_t x : s) ++freqs[x - 1];
        code_ = cfg.huffman ? build_code_table(freqs, cfg.arity) : build_fixed(sigma, cfg.arity);
        build_node(s, 0, 0);
    }

    size_t size() const override { return n_; }
    uint32_t sigma() const override { return sigma_; }
    SeqKind kind() const override { return SeqKind::WaveletTree; }
    const WaveletConfig& config() const { return cfg_; }

    uint32_t access(size_t i) const override {
        check_access(i);
        size_t v = 0;
        while (!nodes_[v].leaf_symbol) {
            const Node& nd = nodes_[v];
            unsigned d = node_access(nd, i);
            i = node_rank(nd, d, i);
            v = nd.child[d];
        }
        return nodes_[v].leaf_symbol;
    }

    size_t rank(uint32_t a, size_t i) const override {
        check_rank(a, i);
        if (i == 0 || code_.length(a) == 0) return 0;
        size_t v = 0;
        for (unsigned l = 0; l < code_.length(a); ++l) {
            unsigned d = code_.code(a)[l];
            i = node_rank(nodes_[v], d, i);
            if (i == 0) return 0;
            v = nodes_[v].child[d];
        }
        return i;
    }

    size_t select(uint32_t a, size_t j) const override {
        check_symbol(a);
        if (j == 0) return 0;
        if (code_.length(a) == 0 || j > rank(a, n_))
            throw std::out_of_range("select: occurrence index");
        std::vector<size_t> path;  // nodes along a's code
        size_t v = 0;
        for (unsigned l = 0; l < code_.length(a); ++l) {
            path.push_back(v);
            v = nodes_[v].child[code_.code(a)[l]];
        }
        for (unsigned l = code_.length(a); l-- > 0;)
            j = node_select(nodes_[path[l]], code_.code(a)[l], j);
        return j;
    }

    size_t size_in_bits() const override {
        size_t bits = 256;
        for (const Node& nd : nodes_) {
            bits += 64 + nd.child.size() * 32;
            if (nd.bv) bits += nd.bv->size_in_bits();
            if (nd.seq) bits += nd.seq->size_in_bits();
        }
        return bits;
    }

    void save(std::ostream& os) const override {
        write_u64(os, n_);
        write_u64(os, sigma_);
        write_u16(os, cfg_.huffman ? 1 : 0);
        write_u64(os, cfg_.arity);
        std::vector<uint32_t> lens(code_.lengths.begin(), code_.lengths.end());
        write_vec(os, lens);
        write_u64(os, nodes_.size());
        for (const Node& nd : nodes_) {
            write_u64(os, nd.leaf_symbol);
            std::vector<int32_t> ch(nd.child.begin(), nd.child.end());
            write_vec(os, ch);
            if (nd.leaf_symbol) continue;
            if (cfg_.arity == 2)
                save_bitvec(os, *nd.bv);
            else
                save_sequence(os, *nd.seq);
        }
    }
    static SequencePtr load(std::istream& is) {
        auto t = std::make_unique<WaveletTree>();
        t->n_ = read_u64(is);
        t->sigma_ = static_cast<uint32_t>(read_u64(is));
        t->cfg_.huffman = read_u16(is) != 0;
        t->cfg_.arity = static_cast<unsigned>(read_u64(is));
        auto lens = read_vec<uint32_t>(is);
        t->code_ = assign_canonical(std::vector<unsigned>(lens.begin(), lens.end()), t->cfg_.arity);
        size_t nn = read_u64(is);
        t->nodes_.resize(nn);
        for (Node& nd : t->nodes_) {
            nd.leaf_symbol = static_cast<uint32_t>(read_u64(is));
            auto ch = read_vec<int32_t>(is);
            nd.child.assign(ch.begin(), ch.end());
            if (nd.leaf_symbol) continue;
            if (t->cfg_.arity == 2)
                nd.bv = load_bitvec(is);
            else
                nd.seq = load_sequence(is);
        }
        return t;
    }

   private:
    struct Node {
        BitVecPtr bv;       // arity 2
        SequencePtr seq;    // arity > 2
        std::vector<int32_t> child;
        uint32_t leaf_symbol = 0;  // nonzero marks a leaf
    };

    unsigned node_access(const Node& nd, size_t i) const {
        return nd.bv ? unsigned(nd.bv->access(i)) : nd.seq->access(i) - 1;
    }
    size_t node_rank(const Node& nd, unsigned d, size_t i) const {
        if (nd.bv) return nd.bv->rank_bit(d, i);
        return d + 1 > nd.seq->sigma() ? 0 : nd.seq->rank(d + 1, i);
    }
    size_t node_select(const Node& nd, unsigned d, size_t j) const {
        return nd.bv ? nd.bv->select_bit(d, j) : nd.seq->select(d + 1, j);
    }

    // builds the subtree for the positions whose symbols are `syms` at code
    // depth `depth`; returns the node index
    int32_t build_node(const std::vector<uint32_t>& syms, unsigned depth, unsigned level) {
        size_t idx = nodes_.size();
        nodes_.emplace_back();
        unsigned width = 1;
        for (uint32_t x : syms) width = std::max(width, unsigned(code_.code(x)[depth]) + 1);
        std::vector<uint32_t> digits(syms.size());
        std::vector<std::vector<uint32_t>> part(width);
        std::vector<uint32_t> leaf_of(width, 0);
        for (size_t k = 0; k < syms.size(); ++k) {
            unsigned d = code_.code(syms[k])[depth];
            digits[k] = d + 1;
            if (code_.length(syms[k]) == depth + 1)
                leaf_of[d] = syms[k];
            else
                part[d].push_back(syms[k]);
        }
        if (cfg_.arity == 2) {
            std::vector<bool> bits(digits.size());
            for (size_t k = 0; k < digits.size(); ++k) bits[k] = digits[k] == 2;
            nodes_[idx].bv = make_bitvec(cfg_.effective(level), bits);
        } else {
            nodes_[idx].seq = build_node_seq(cfg_.effective(level), digits, width);
        }
        std::vector<int32_t> child(width, -1);
        for (unsigned d = 0; d < width; ++d) {
            if (leaf_of[d]) {
                child[d] = static_cast<int32_t>(nodes_.size());
                nodes_.emplace_back();
                nodes_.back().leaf_symbol = leaf_of[d];
            } else if (!part[d].empty()) {
                child[d] = build_node(part[d], depth + 1, level + 1);
            }
        }
        nodes_[idx].child = std::move(child);
        return static_cast<int32_t>(idx);
    }

    size_t n_ = 0;
    uint32_t sigma_ = 0;
    WaveletConfig cfg_;
    CodeTable code_;
    std::vector<Node> nodes_;  // nodes_[0] is the root
};

/// Binary wavelet matrix: one bitmap per level, each level the stable
/// zeros-then-ones reshuffle of the one above. Code-shaped variants keep a
/// per-level survivor bitmap marking positions whose code continues, so any
/// prefix-free code works.
class WaveletMatrix final : public Sequence {
   public:
    WaveletMatrix() = default;

    WaveletMatrix(const std::vector<uint32_t>& s, uint32_t sigma, WaveletConfig cfg = {})
        : n_(s.size()), sigma_(sigma), cfg_(cfg) {
        if (s.empty()) throw std::invalid_argument("WaveletMatrix: empty input");
        if (cfg.arity != 2) throw std::invalid_argument("WaveletMatrix: binary only");
        for (uint32_t x : s)
            if (x < 1 || x > sigma) throw std::invalid_argument("WaveletMatrix: symbol out of range");
        std::vector<uint64_t> freqs(sigma, 0);
        for (uint32_t x : s) ++freqs[x - 1];
        code_ = cfg.huffman ? build_binary(freqs) : build_fixed(sigma, 2);
        build(s);
        build_decode();
    }

    size_t size() const override { return n_; }
    uint32_t sigma() const override { return sigma_; }
    SeqKind kind() const override { return SeqKind::WaveletMatrix; }
    const WaveletConfig& config() const { return cfg_; }

    uint32_t access(size_t i) const override {
        check_access(i);
        uint64_t c = 0;
        for (size_t l = 0;; ++l) {
            const Level& lv = levels_[l];
            bool bit = lv.b->access(i);
            c = (c << 1) | uint64_t(bit);
            size_t cand = lv.b->rank_bit(bit, i) + (bit ? lv.z : 0);
            if (l + 1 == levels_.size()) return decode(l + 1, c);
            if (lv.has_dead) {
                if (!lv.dead.access(cand)) return decode(l + 1, c);
                i = lv.dead.rank1(cand);
            } else {
                i = cand;
            }
        }
    }

    size_t rank(uint32_t a, size_t i) const override {
        check_rank(a, i);
        unsigned len = code_.length(a);
        if (i == 0 || len == 0) return 0;
        size_t p = 0;
        for (unsigned l = 0; l < len; ++l) {
            const Level& lv = levels_[l];
            bool bit = code_.code(a)[l];
            i = lv.b->rank_bit(bit, i) + (bit ? lv.z : 0);
            p = lv.b->rank_bit(bit, p) + (bit ? lv.z : 0);
            if (l + 1 < len && lv.has_dead) {
                i = lv.dead.rank1(i);
                p = lv.dead.rank1(p);
            }
        }
        return i - p;
    }

    size_t select(uint32_t a, size_t j) const override {
        check_symbol(a);
        if (j == 0) return 0;
        unsigned len = code_.length(a);
        if (len == 0 || j > rank(a, n_)) throw std::out_of_range("select: occurrence index");
        size_t p = 0;
        for (unsigned l = 0; l < len; ++l) {
            const Level& lv = levels_[l];
            bool bit = code_.code(a)[l];
            p = lv.b->rank_bit(bit, p) + (bit ? lv.z : 0);
            if (l + 1 < len && lv.has_dead) p = lv.dead.rank1(p);
        }
        j += p;  // index among level-`len` candidates
        for (unsigned l = len; l-- > 0;) {
            const Level& lv = levels_[l];
            bool bit = code_.code(a)[l];
            j = lv.b->select_bit(bit, bit ? j - lv.z : j);
            if (l > 0 && levels_[l - 1].has_dead) j = levels_[l - 1].dead.select1(j);
        }
        return j;
    }

    size_t size_in_bits() const override {
        size_t bits = 256;
        for (const Level& lv : levels_) {
            bits += 64 + lv.b->size_in_bits();
            if (lv.has_dead) bits += lv.dead.size_in_bits();
        }
        return bits;
    }

    void save(std::ostream& os) const override {
        write_u64(os, n_);
        write_u64(os, sigma_);
        write_u16(os, cfg_.huffman ? 1 : 0);
        std::vector<uint32_t> lens(code_.lengths.begin(), code_.lengths.end());
        write_vec(os, lens);
        write_u64(os, levels_.size());
        for (const Level& lv : levels_) {
            write_u64(os, lv.z);
            write_u16(os, lv.has_dead ? 1 : 0);
            save_bitvec(os, *lv.b);
            if (lv.has_dead) lv.dead.save(os);
        }
    }
    static SequencePtr load(std::istream& is) {
        auto m = std::make_unique<WaveletMatrix>();
        m->n_ = read_u64(is);
        m->sigma_ = static_cast<uint32_t>(read_u64(is));
        m->cfg_.huffman = read_u16(is) != 0;
        auto lens = read_vec<uint32_t>(is);
        m->code_ = assign_canonical(std::vector<unsigned>(lens.begin(), lens.end()), 2);
        size_t nl = read_u64(is);
        m->levels_.resize(nl);
        for (Level& lv : m->levels_) {
            lv.z = read_u64(is);
            lv.has_dead = read_u16(is) != 0;
            lv.b = load_bitvec(is);
            if (lv.has_dead) lv.dead = PlainBitmap::load(is);
        }
        m->build_decode();
        return m;
    }

   private:
    struct Level {
        BitVecPtr b;
        uint64_t z = 0;       // zeros in b
        bool has_dead = false;
        PlainBitmap dead;     // over the reshuffled order: 1 = code continues
    };

    void build(const std::vector<uint32_t>& s) {
        size_t m = code_.max_length();
        std::vector<uint32_t> cur(s);
        for (size_t l = 0; l < m; ++l) {
            std::vector<bool> bits(cur.size());
            std::vector<uint32_t> shuffled;
            shuffled.reserve(cur.size());
            for (size_t k = 0; k < cur.size(); ++k) bits[k] = code_.code(cur[k])[l];
            for (size_t k = 0; k < cur.size(); ++k)
                if (!bits[k]) shuffled.push_back(cur[k]);
            Level lv;
            lv.z = shuffled.size();
            for (size_t k = 0; k < cur.size(); ++k)
                if (bits[k]) shuffled.push_back(cur[k]);
            lv.b = make_bitvec(cfg_.effective(static_cast<unsigned>(l)), bits);
            if (l + 1 < m) {
                std::vector<bool> alive(shuffled.size());
                std::vector<uint32_t> next;
                bool any_dead = false;
                for (size_t k = 0; k < shuffled.size(); ++k) {
                    alive[k] = code_.length(shuffled[k]) > l + 1;
                    if (alive[k])
                        next.push_back(shuffled[k]);
                    else
                        any_dead = true;
                }
                lv.has_dead = any_dead;
                if (any_dead) lv.dead = PlainBitmap(alive);
                cur = std::move(next);
            }
            levels_.push_back(std::move(lv));
        }
    }

    void build_decode() {
        if (code_.max_length() > 56) throw std::invalid_argument("WaveletMatrix: codes too long");
        decode_.clear();
        for (uint32_t a = 1; a <= sigma_; ++a) {
            unsigned len = code_.length(a);
            if (len == 0) continue;
            uint64_t v = 0;
            for (uint8_t d : code_.code(a)) v = (v << 1) | d;
            decode_[(uint64_t(len) << 56) | v] = a;
        }
    }
    uint32_t decode(unsigned len, uint64_t v) const {
        auto it = decode_.find((uint64_t(len) << 56) | v);
        if (it == decode_.end()) throw std::logic_error("WaveletMatrix: undecodable path");
        return it->second;
    }

    size_t n_ = 0;
    uint32_t sigma_ = 0;
    WaveletConfig cfg_;
    CodeTable code_;
    std::vector<Level> levels_;
    std::unordered_map<uint64_t, uint32_t> decode_;
};

/// Small-alphabet sequence for multi-ary wavelet nodes.
inline SequencePtr build_node_seq(Backend be, const std::vector<uint32_t>& s, uint32_t sigma) {
    switch (be) {
        case Backend::Plain:
            return std::make_unique<PackedSeq>(s, sigma);
        case Backend::Gcc:
            return std::make_unique<GccIndex>(s, sigma, GccConfig{.s = 1024, .delta = 1});
        case Backend::Rrr:
        case Backend::Delta:
            return std::make_unique<WaveletMatrix>(
                s, sigma, WaveletConfig{.huffman = false, .arity = 2, .backend = be});
        case Backend::LeastSpace: {
            SequencePtr best = std::make_unique<PackedSeq>(s, sigma);
            SequencePtr alts[] = {
                std::make_unique<WaveletMatrix>(
                    s, sigma, WaveletConfig{.huffman = false, .arity = 2, .backend = Backend::Rrr}),
                std::make_unique<GccIndex>(s, sigma, GccConfig{.s = 1024, .delta = 1})};
            for (auto& alt : alts)
                if (alt->size_in_bits() < best->size_in_bits()) best = std::move(alt);
            return best;
        }
    }
    throw std::invalid_argument("build_node_seq: bad backend");
}

}  // namespace gcrs
