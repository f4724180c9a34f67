#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

namespace gcrs {

/// Canonical prefix code over symbols 1..sigma. Digits are base `arity`
/// (2 for binary codes), most significant digit first.
struct CodeTable {
    unsigned arity = 2;
    std::vector<std::vector<uint8_t>> codes;  // codes[a-1], empty if freq 0
    std::vector<unsigned> lengths;            // lengths[a-1], 0 if unused

    unsigned length(uint32_t a) const { return lengths[a - 1]; }
    const std::vector<uint8_t>& code(uint32_t a) const { return codes[a - 1]; }
    size_t max_length() const {
        unsigned m = 0;
        for (unsigned l : lengths) m = std::max(m, l);
        return m;
    }
};

namespace detail {

// Huffman code lengths; k-ary case pads with zero-frequency dummies so the
// final merge is full. Ties broken by first-seen order for determinism.
inline std::vector<unsigned> huffman_lengths(const std::vector<uint64_t>& freqs,
                                             unsigned arity) {
    size_t m = 0;
    for (uint64_t f : freqs)
        if (f > 0) ++m;
    if (m == 0) throw std::invalid_argument("huffman: empty frequency table");
    std::vector<unsigned> lengths(freqs.size(), 0);
    if (m == 1) {
        for (size_t i = 0; i < freqs.size(); ++i)
            if (freqs[i] > 0) lengths[i] = 1;  // a 1-digit code, never 0
        return lengths;
    }
    struct Node {
        uint64_t freq;
        uint64_t order;  // creation order, for stable ties
        int left_child;  // first child index in nodes, -1 for leaves
        unsigned nchildren;
        size_t symbol;
    };
    std::vector<Node> nodes;
    std::vector<int> children;  // flattened child lists of internal nodes
    auto cmp = [&nodes](int a, int b) {
        if (nodes[a].freq != nodes[b].freq) return nodes[a].freq > nodes[b].freq;
        return nodes[a].order > nodes[b].order;
    };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> pq(cmp);
    uint64_t order = 0;
    for (size_t i = 0; i < freqs.size(); ++i) {
        if (freqs[i] == 0) continue;
        nodes.push_back({freqs[i], order++, -1, 0, i});
        pq.push(static_cast<int>(nodes.size() - 1));
    }
    if (arity > 2) {
        size_t dummies = (arity - 1 - ((m - 1) % (arity - 1))) % (arity - 1);
        for (size_t d = 0; d < dummies; ++d) {
            nodes.push_back({0, order++, -1, 0, SIZE_MAX});
            pq.push(static_cast<int>(nodes.size() - 1));
        }
    }
    while (pq.size() > 1) {
        int first = static_cast<int>(children.size());
        unsigned take = static_cast<unsigned>(std::min<size_t>(arity, pq.size()));
        uint64_t f = 0;
        for (unsigned k = 0; k < take; ++k) {
            int c = pq.top();
            pq.pop();
            children.push_back(c);
            f += nodes[c].freq;
        }
        nodes.push_back({f, order++, first, take, SIZE_MAX});
        pq.push(static_cast<int>(nodes.size() - 1));
    }
    // depths by traversal from the root
    std::vector<std::pair<int, unsigned>> stack{{pq.top(), 0}};
    while (!stack.empty()) {
        auto [v, d] = stack.back();
        stack.pop_back();
        if (nodes[v].left_child < 0) {
            if (nodes[v].symbol != SIZE_MAX) lengths[nodes[v].symbol] = std::max(1u, d);
        } else {
            for (unsigned k = 0; k < nodes[v].nchildren; ++k)
                stack.push_back({children[nodes[v].left_child + k], d + 1});
        }
    }
    return lengths;
}

}  // namespace detail

/// Canonical assignment: symbols sorted by (length, symbol id); codes are
/// consecutive base-`arity` values, shifted when the length grows.
inline CodeTable assign_canonical(std::vector<unsigned> lengths, unsigned arity) {
    CodeTable t;
    t.arity = arity;
    t.lengths = std::move(lengths);
    t.codes.resize(t.lengths.size());
    std::vector<size_t> order;
    for (size_t i = 0; i < t.lengths.size(); ++i)
        if (t.lengths[i] > 0) order.push_back(i);
    if (order.empty()) throw std::invalid_argument("assign_canonical: no used symbols");
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (t.lengths[a] != t.lengths[b]) return t.lengths[a] < t.lengths[b];
        return a < b;
    });
    uint64_t code = 0;
    unsigned prev_len = t.lengths[order[0]];
    for (size_t k = 0; k < order.size(); ++k) {
        size_t i = order[k];
        unsigned len = t.lengths[i];
        for (unsigned d = prev_len; d < len; ++d) code *= arity;
        std::vector<uint8_t> digits(len);
        uint64_t c = code;
        for (unsigned d = len; d-- > 0;) {
            digits[d] = static_cast<uint8_t>(c % arity);
            c /= arity;
        }
        t.codes[i] = std::move(digits);
        ++code;
        prev_len = len;
    }
    return t;
}

inline CodeTable build_code_table(const std::vector<uint64_t>& freqs, unsigned arity) {
    return assign_canonical(detail::huffman_lengths(freqs, arity), arity);
}

inline CodeTable build_binary(const std::vector<uint64_t>& freqs) {
    return build_code_table(freqs, 2);
}
inline CodeTable build_kary(const std::vector<uint64_t>& freqs, unsigned arity) {
    return build_code_table(freqs, arity);
}

/// Fixed-width codes for a balanced shape: ceil(log_arity(sigma)) digits of
/// (symbol - 1), most significant first.
inline CodeTable build_fixed(uint32_t sigma, unsigned arity) {
    CodeTable t;
    t.arity = arity;
    unsigned levels = 1;
    uint64_t span = arity;
    while (span < sigma) {
        span *= arity;
        ++levels;
    }
    t.lengths.assign(sigma, levels);
    t.codes.resize(sigma);
    for (uint32_t a = 1; a <= sigma; ++a) {
        std::vector<uint8_t> digits(levels);
        uint64_t c = a - 1;
        for (unsigned d = levels; d-- > 0;) {
            digits[d] = static_cast<uint8_t>(c % arity);
            c /= arity;
        }
        t.codes[a - 1] = std::move(digits);
    }
    return t;
}

}  // namespace gcrs
