#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fmindex.hpp"
#include "io.hpp"
#include "repair.hpp"

namespace gcrs {

/// SplitMix64: fixed, documented generator so corpora are bit-reproducible.
/// state += 0x9E3779B97F4A7C15; z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31).
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, bound).
    uint64_t below(uint64_t bound) { return next() % bound; }
    /// Uniform in [0, 1).
    double real() { return double(next() >> 11) * 0x1.0p-53; }

   private:
    uint64_t state_;
};

/// Concatenates `copies` mutated copies of `base`; each copied position is
/// independently replaced by a uniformly chosen different symbol with
/// probability mutation_prob.
inline std::vector<uint32_t> gen_dna(const std::vector<uint32_t>& base, uint32_t sigma,
                                     uint64_t copies, double mutation_prob, uint64_t seed) {
    if (base.empty()) throw std::invalid_argument("gen_dna: empty base");
    if (sigma < 1 || sigma > 256) throw std::invalid_argument("gen_dna: sigma out of range");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("gen_dna: bad mutation probability");
    for (uint32_t x : base)
        if (x < 1 || x > sigma) throw std::invalid_argument("gen_dna: symbol out of range");
    SplitMix64 rng(seed);
    std::vector<uint32_t> out;
    out.reserve(base.size() * copies);
    for (uint64_t c = 0; c < copies; ++c) {
        for (uint32_t x : base) {
            if (sigma > 1 && rng.real() < mutation_prob) {
                uint32_t repl = 1 + static_cast<uint32_t>(rng.below(sigma - 1));
                if (repl >= x) ++repl;  // uniform over the other sigma-1 symbols
                out.push_back(repl);
            } else {
                out.push_back(x);
            }
        }
    }
    return out;
}

inline double entropy_h0(const std::vector<uint32_t>& s, uint32_t sigma) {
    if (s.empty()) return 0.0;
    std::vector<uint64_t> freq(sigma, 0);
    for (uint32_t x : s) ++freq[x - 1];
    double h = 0.0, n = double(s.size());
    for (uint64_t f : freq)
        if (f > 0) h += double(f) / n * std::log2(n / double(f));
    return h;
}

/// k-th order empirical entropy; contexts are the k preceding symbols, the
/// first k positions are skipped.
inline double entropy_hk(const std::vector<uint32_t>& s, uint32_t sigma, unsigned k) {
    if (k > 3) throw std::invalid_argument("entropy_hk: k > 3 unsupported");
    if (k == 0) return entropy_h0(s, sigma);
    if (s.size() <= k) return 0.0;
    // context -> per-symbol counts
    std::unordered_map<uint64_t, std::unordered_map<uint32_t, uint64_t>> ctx;
    for (size_t i = k; i < s.size(); ++i) {
        uint64_t key = 0;
        for (unsigned d = 1; d <= k; ++d) key = key * (uint64_t(sigma) + 1) + s[i - d];
        ++ctx[key][s[i]];
    }
    double h = 0.0, n = double(s.size());
    for (const auto& [key, counts] : ctx) {
        uint64_t tot = 0;
        for (const auto& [sym, f] : counts) tot += f;
        double hc = 0.0;
        for (const auto& [sym, f] : counts)
            hc += double(f) / double(tot) * std::log2(double(tot) / double(f));
        h += double(tot) / n * hc;
    }
    return h;
}

struct CorpusReport {
    std::string dataset;
    uint64_t n = 0;
    uint32_t sigma = 0;
    double h0 = 0, h1 = 0, h2 = 0, h3 = 0;
    double repair_bps = 0;      // (2(r-sigma)+c) * ceil(lg r) / n
    double bwt_runs_ratio = 0;  // BWT runs / n

    static std::string csv_header() {
        return "dataset,n,sigma,h0,h1,h2,h3,repair_bps,bwt_runs_ratio";
    }
    std::string csv_row() const {
        std::ostringstream os;
        os << dataset << ',' << n << ',' << sigma << ',' << h0 << ',' << h1 << ',' << h2 << ','
           << h3 << ',' << repair_bps << ',' << bwt_runs_ratio;
        return os.str();
    }
};

inline CorpusReport corpus_report(const std::vector<uint32_t>& s, uint32_t sigma,
                                  const std::string& name) {
    CorpusReport r;
    r.dataset = name;
    r.n = s.size();
    r.sigma = sigma;
    r.h0 = entropy_h0(s, sigma);
    r.h1 = entropy_hk(s, sigma, 1);
    r.h2 = entropy_hk(s, sigma, 2);
    r.h3 = entropy_hk(s, sigma, 3);
    GrammarStats gs = grammar_stats(repair_compress(s, sigma, true));
    r.repair_bps = double(gs.bits_plain) / double(s.size());
    FmIndex fm(s, sigma, FmBackend::WthRrr);
    r.bwt_runs_ratio = fm.stats().ratio;
    return r;
}

// --- sequence file formats ---

struct SeqFile {
    std::vector<uint32_t> data;
    uint32_t sigma = 0;
};

/// RAW8: one byte per symbol; bytes are 0-based, symbols 1-based.
inline SeqFile read_raw8(std::istream& is) {
    SeqFile f;
    char c;
    uint32_t maxv = 0;
    while (is.get(c)) {
        uint32_t v = static_cast<uint8_t>(c) + 1;
        maxv = std::max(maxv, v);
        f.data.push_back(v);
    }
    f.sigma = maxv;
    return f;
}
inline void write_raw8(std::ostream& os, const std::vector<uint32_t>& s) {
    for (uint32_t x : s) {
        if (x < 1 || x > 256) throw std::invalid_argument("raw8: symbol exceeds byte range");
        os.put(static_cast<char>(x - 1));
    }
}

/// U32LE: header (magic "GCSQ", version, n, sigma as LE u32) then n LE u32
/// 1-based symbols.
inline SeqFile read_u32le(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "GCSQ")
        throw std::runtime_error("u32le: bad magic");
    uint32_t version = read_u32(is);
    if (version != 1) throw std::runtime_error("u32le: unsupported version");
    SeqFile f;
    uint32_t n = read_u32(is);
    f.sigma = read_u32(is);
    f.data.resize(n);
    for (uint32_t i = 0; i < n; ++i) {
        f.data[i] = read_u32(is);
        if (f.data[i] < 1 || f.data[i] > f.sigma)
            throw std::runtime_error("u32le: symbol out of range");
    }
    return f;
}
inline void write_u32le(std::ostream& os, const std::vector<uint32_t>& s, uint32_t sigma) {
    os.write("GCSQ", 4);
    write_u32(os, 1);
    write_u32(os, static_cast<uint32_t>(s.size()));
    write_u32(os, sigma);
    for (uint32_t x : s) write_u32(os, x);
}

inline SeqFile read_sequence_file(const std::string& path, const std::string& format) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    if (format == "raw8") return read_raw8(is);
    if (format == "u32le") return read_u32le(is);
    throw std::invalid_argument("unknown format " + format);
}

}  // namespace gcrs
