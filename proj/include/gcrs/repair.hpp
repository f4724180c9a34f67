#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bits.hpp"
#include "io.hpp"

namespace gcrs {

/// RePair output: rule table plus reduced sequence. Symbols 1..sigma are
/// terminals; rule X -> (left, right) is stored at rules[X - sigma - 1] and
/// references only earlier symbols.
struct Grammar {
    uint32_t sigma = 0;
    uint64_t n = 0;                                      // original length
    std::vector<std::pair<uint32_t, uint32_t>> rules;    // nonterminals
    std::vector<uint32_t> seq;                           // C

    uint32_t num_symbols() const { return sigma + static_cast<uint32_t>(rules.size()); }
    bool is_terminal(uint32_t x) const { return x >= 1 && x <= sigma; }
    uint32_t left(uint32_t x) const { return rules[x - sigma - 1].first; }
    uint32_t right(uint32_t x) const { return rules[x - sigma - 1].second; }

    void check_symbol(uint32_t x) const {
        if (x < 1 || x > num_symbols()) throw std::out_of_range("Grammar: bad symbol id");
    }

    // header (sigma, r, c, n as 64-bit LE), then rule pairs and C as
    // fixed-width ceil(lg r)-bit fields
    void save(std::ostream& os) const {
        uint64_t r = num_symbols();
        write_u64(os, sigma);
        write_u64(os, r);
        write_u64(os, seq.size());
        write_u64(os, n);
        unsigned w = std::max(1u, bit_length(r));
        BitBuffer bb;
        for (auto [l, rr] : rules) {
            bb.append_bits(l, w);
            bb.append_bits(rr, w);
        }
        for (uint32_t x : seq) bb.append_bits(x, w);
        bb.save(os);
    }
    static Grammar load(std::istream& is) {
        Grammar g;
        g.sigma = static_cast<uint32_t>(read_u64(is));
        uint64_t r = read_u64(is);
        uint64_t c = read_u64(is);
        g.n = read_u64(is);
        unsigned w = std::max(1u, bit_length(r));
        BitBuffer bb = BitBuffer::load(is);
        size_t pos = 0;
        for (uint64_t i = g.sigma; i < r; ++i) {
            uint32_t l = static_cast<uint32_t>(bb.read(pos, w));
            pos += w;
            uint32_t rr = static_cast<uint32_t>(bb.read(pos, w));
            pos += w;
            if (l < 1 || l > g.sigma + g.rules.size() || rr < 1 || rr > g.sigma + g.rules.size())
                throw std::runtime_error("Grammar: malformed rule reference");
            g.rules.emplace_back(l, rr);
        }
        g.seq.resize(c);
        for (uint64_t i = 0; i < c; ++i) {
            g.seq[i] = static_cast<uint32_t>(bb.read(pos, w));
            pos += w;
            if (g.seq[i] < 1 || g.seq[i] > r) throw std::runtime_error("Grammar: malformed C");
        }
        return g;
    }

    size_t size_in_bits() const {
        unsigned w = std::max(1u, bit_length(num_symbols()));
        return (2 * rules.size() + seq.size()) * w;
    }
};

struct GrammarStats {
    uint64_t r = 0;          // terminals + nonterminals
    uint64_t c = 0;
    uint64_t bits_plain = 0;  // (2(r - sigma) + c) * ceil(lg r)
    unsigned height = 0;
};

namespace detail {

struct PairRec {
    int64_t count = 0;
    uint64_t created = 0;
    std::vector<uint32_t> occ;  // candidate start positions (may be stale)
};

struct HeapEntry {
    int64_t count;
    uint64_t created;
    uint64_t key;
};

}  // namespace detail

/// RePair: repeatedly replace the most frequent pair until it appears only
/// once. With balanced=true, freshly created pairs queue behind pairs of
/// equal frequency, which keeps grammar trees shallow in practice.
inline Grammar repair_compress(const std::vector<uint32_t>& s, uint32_t sigma,
                               bool balanced = true) {
    if (s.empty()) throw std::invalid_argument("repair: empty input");
    for (uint32_t x : s)
        if (x < 1 || x > sigma) throw std::invalid_argument("repair: symbol out of range");

    constexpr uint32_t kDead = UINT32_MAX;
    std::vector<uint32_t> sym(s);
    size_t n = sym.size();
    std::vector<int64_t> nxt(n), prv(n);
    for (size_t i = 0; i < n; ++i) {
        nxt[i] = i + 1 < n ? static_cast<int64_t>(i + 1) : -1;
        prv[i] = static_cast<int64_t>(i) - 1;
    }

    std::unordered_map<uint64_t, detail::PairRec> pairs;
    uint64_t order = 0;
    auto key_of = [](uint32_t a, uint32_t b) { return (uint64_t(a) << 32) | b; };

    auto cmp = [balanced](const detail::HeapEntry& x, const detail::HeapEntry& y) {
        if (x.count != y.count) return x.count < y.count;
        return balanced ? x.created > y.created : x.created < y.created;
    };
    std::priority_queue<detail::HeapEntry, std::vector<detail::HeapEntry>, decltype(cmp)> heap(cmp);

    auto inc_pair = [&](uint32_t a, uint32_t b, uint32_t pos) {
        auto [it, fresh] = pairs.try_emplace(key_of(a, b));
        if (fresh) it->second.created = order++;
        detail::PairRec& rec = it->second;
        ++rec.count;
        rec.occ.push_back(pos);
        if (rec.count >= 2)
            heap.push({rec.count, rec.created, it->first});
    };
    auto dec_pair = [&](uint32_t a, uint32_t b) {
        auto it = pairs.find(key_of(a, b));
        if (it != pairs.end() && it->second.count > 0) --it->second.count;
    };

    for (size_t i = 0; i + 1 < n; ++i) inc_pair(sym[i], sym[i + 1], static_cast<uint32_t>(i));

    Grammar g;
    g.sigma = sigma;
    g.n = n;

    std::vector<uint32_t> valid;
    while (!heap.empty()) {
        detail::HeapEntry e = heap.top();
        heap.pop();
        if (e.count < 2) break;
        auto it = pairs.find(e.key);
        detail::PairRec& rec = it->second;
        if (rec.count < 2) continue;
        if (rec.count != e.count) {  // stale entry; requeue at the live count
            heap.push({rec.count, rec.created, e.key});
            continue;
        }
        uint32_t a = static_cast<uint32_t>(e.key >> 32);
        uint32_t b = static_cast<uint32_t>(e.key & 0xffffffffu);

        std::sort(rec.occ.begin(), rec.occ.end());
        rec.occ.erase(std::unique(rec.occ.begin(), rec.occ.end()), rec.occ.end());

        // count non-overlapping replaceable occurrences left to right
        valid.clear();
        int64_t last_end = -1;
        for (uint32_t p : rec.occ) {
            if (sym[p] != a) continue;
            int64_t q = nxt[p];
            if (q < 0 || sym[q] != b) continue;
            if (static_cast<int64_t>(p) == last_end) continue;  // overlaps previous
            valid.push_back(p);
            last_end = q;
        }
        if (valid.size() < 2) {
            rec.count = static_cast<int64_t>(valid.size());
            rec.occ.swap(valid);
            continue;
        }

        g.rules.emplace_back(a, b);
        uint32_t x = g.num_symbols();
        for (uint32_t p : valid) {
            if (sym[p] != a) continue;  // consumed by an earlier replacement
            int64_t q = nxt[p];
            if (q < 0 || sym[q] != b) continue;
            int64_t pl = prv[p], qr = nxt[q];
            if (pl >= 0) dec_pair(sym[pl], a);
            if (qr >= 0) dec_pair(b, sym[qr]);
            --rec.count;
            sym[p] = x;
            sym[q] = kDead;
            nxt[p] = qr;
            if (qr >= 0) prv[qr] = p;
            if (pl >= 0) inc_pair(sym[pl], x, static_cast<uint32_t>(pl));
            if (qr >= 0) inc_pair(x, sym[qr], p);
        }
        rec.occ.clear();
        rec.occ.shrink_to_fit();
        if (rec.count < 0) rec.count = 0;
    }

    for (size_t i = 0; i < n; i = static_cast<size_t>(nxt[i] < 0 ? n : nxt[i])) {
        g.seq.push_back(sym[i]);
        if (nxt[i] < 0) break;
    }
    return g;
}

inline void expand_into(const Grammar& g, uint32_t x, std::vector<uint32_t>& out,
                        uint64_t limit = UINT64_MAX) {
    g.check_symbol(x);
    std::vector<uint32_t> stack{x};
    while (!stack.empty() && out.size() < limit) {
        uint32_t v = stack.back();
        stack.pop_back();
        if (g.is_terminal(v)) {
            out.push_back(v);
        } else {
            stack.push_back(g.right(v));
            stack.push_back(g.left(v));
        }
    }
}

inline std::vector<uint32_t> repair_decompress(const Grammar& g) {
    std::vector<uint32_t> out;
    out.reserve(g.n);
    for (uint32_t x : g.seq) expand_into(g, x, out);
    return out;
}

/// First k terminals of exp(x).
inline std::vector<uint32_t> expand_prefix(const Grammar& g, uint32_t x, uint64_t k) {
    std::vector<uint32_t> out;
    expand_into(g, x, out, k);
    return out;
}

/// Max derivation depth over C (terminals have depth 0).
inline unsigned parse_height(const Grammar& g) {
    std::vector<unsigned> h(g.rules.size(), 0);
    auto height_of = [&](uint32_t v) { return g.is_terminal(v) ? 0u : h[v - g.sigma - 1]; };
    for (size_t i = 0; i < g.rules.size(); ++i)
        h[i] = 1 + std::max(height_of(g.rules[i].first), height_of(g.rules[i].second));
    unsigned m = 0;
    for (uint32_t x : g.seq) m = std::max(m, height_of(x));
    return m;
}

inline GrammarStats grammar_stats(const Grammar& g) {
    GrammarStats st;
    st.r = g.num_symbols();
    st.c = g.seq.size();
    st.bits_plain = (2 * g.rules.size() + st.c) * std::max(1u, bit_length(st.r));
    st.height = parse_height(g);
    return st;
}

}  // namespace gcrs
