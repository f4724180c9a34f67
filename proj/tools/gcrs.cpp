// gcrs: build, query, and benchmark rank/select structures over
// grammar-compressed sequences.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gcrs/gcrs.hpp"

namespace {

using namespace gcrs;

Backend parse_backend(const std::string& s) {
    if (s == "plain") return Backend::Plain;
    if (s == "rrr") return Backend::Rrr;
    if (s == "delta") return Backend::Delta;
    if (s == "gcc") return Backend::Gcc;
    if (s == "least") return Backend::LeastSpace;
    throw CLI::ValidationError("--backend", "unknown backend " + s);
}

StructureTag parse_structure(const std::string& s) {
    for (uint16_t t = 1; t <= 11; ++t)
        if (s == structure_name(static_cast<StructureTag>(t))) return static_cast<StructureTag>(t);
    throw CLI::ValidationError("--structure", "unknown structure " + s);
}

struct BuildOpts {
    std::string input, format = "raw8", structure, backend = "plain", shape, output;
    uint64_t s = 1024, sprime = 8;
    unsigned delta = 0, cut = 3, cuto = 0, arity = 4;
};

std::string build_payload(const BuildOpts& o, StructureTag tag, const SeqFile& f,
                          std::string* breakdown) {
    std::ostringstream pay;
    auto finish_seq = [&](const Sequence& ix) {
        save_sequence(pay, ix);
        double n = double(f.data.size());
        std::ostringstream br;
        br << "total " << double(ix.size_in_bits()) / n << " bits/symbol";
        *breakdown = br.str();
    };
    switch (tag) {
        case StructureTag::GCC_N:
        case StructureTag::GCC_C: {
            GccConfig cfg{tag == StructureTag::GCC_C ? GccMode::C : GccMode::N, o.s, o.sprime,
                          o.delta, true};
            GccIndex ix(f.data, f.sigma, cfg);
            save_sequence(pay, ix);
            GccSpace sp = ix.space();
            double n = double(f.data.size());
            std::ostringstream br;
            br << "grammar " << sp.grammar / n << " + counters " << sp.counters / n
               << " + samples " << sp.samples / n << " = " << double(ix.size_in_bits()) / n
               << " bits/symbol";
            *breakdown = br.str();
            break;
        }
        case StructureTag::WT:
        case StructureTag::WTH:
        case StructureTag::MWT:
        case StructureTag::MWTH: {
            bool huff = tag == StructureTag::WTH || tag == StructureTag::MWTH;
            bool multi = tag == StructureTag::MWT || tag == StructureTag::MWTH;
            if (!o.shape.empty()) huff = o.shape == "huffman";
            WaveletConfig cfg{huff, multi ? o.arity : 2, parse_backend(o.backend), 0};
            finish_seq(WaveletTree(f.data, f.sigma, cfg));
            break;
        }
        case StructureTag::WM:
        case StructureTag::WMH: {
            bool huff = tag == StructureTag::WMH;
            if (!o.shape.empty()) huff = o.shape == "huffman";
            WaveletConfig cfg{huff, 2, parse_backend(o.backend), 0};
            finish_seq(WaveletMatrix(f.data, f.sigma, cfg));
            break;
        }
        case StructureTag::AP: {
            ApConfig cfg{o.cut, 0, ApConfig::KBackend::WtRrr, ApConfig::Fallback::WmPlain};
            finish_seq(ApIndex(f.data, f.sigma, cfg));
            break;
        }
        case StructureTag::AP_RP: {
            ApConfig cfg{o.cut, o.cuto, ApConfig::KBackend::Gcc, ApConfig::Fallback::WmRp};
            finish_seq(ApIndex(f.data, f.sigma, cfg));
            break;
        }
        case StructureTag::FMI: {
            FmBackend be = FmBackend::Gcc;
            if (o.backend == "ap-rp")
                be = FmBackend::ApRp;
            else if (o.backend == "rrr" || o.backend == "wth-rrr")
                be = FmBackend::WthRrr;
            else if (o.backend != "gcc" && o.backend != "plain")
                throw CLI::ValidationError("--backend", "fmi supports gcc|ap-rp|wth-rrr");
            FmIndex fm(f.data, f.sigma, be);
            fm.save(pay);
            std::ostringstream br;
            br << "total " << double(fm.size_in_bits()) / double(f.data.size())
               << " bits/symbol";
            *breakdown = br.str();
            break;
        }
    }
    return pay.str();
}

int cmd_build(const BuildOpts& o) {
    StructureTag tag = parse_structure(o.structure);
    SeqFile f = read_sequence_file(o.input, o.format);
    if (f.data.empty()) throw std::runtime_error("input is empty");
    std::string breakdown;
    std::string payload = build_payload(o, tag, f, &breakdown);
    write_container_file(o.output, tag, payload);
    std::cout << structure_name(tag) << ": " << breakdown << "\n";
    return 0;
}

struct LoadedIndex {
    StructureTag tag;
    SequencePtr seq;                 // sequence structures
    std::unique_ptr<FmIndex> fmi;    // tag FMI
};

LoadedIndex load_index(const std::string& path) {
    auto [tag, payload] = read_container_file(path);
    std::istringstream ps(payload);
    LoadedIndex li;
    li.tag = tag;
    if (tag == StructureTag::FMI)
        li.fmi = std::make_unique<FmIndex>(FmIndex::load(ps));
    else
        li.seq = load_sequence(ps);
    return li;
}

int cmd_query(const std::string& index, const std::string& op,
              const std::vector<uint64_t>& args) {
    if (op == "access") {
        if (args.size() != 1) throw CLI::ValidationError("--args", "access needs: i");
    } else if (op == "rank") {
        if (args.size() != 2) throw CLI::ValidationError("--args", "rank needs: a i");
    } else if (op == "select") {
        if (args.size() != 2) throw CLI::ValidationError("--args", "select needs: a j");
    } else if (op == "count") {
        if (args.empty()) throw CLI::ValidationError("--args", "count needs pattern symbols");
    } else {
        throw CLI::ValidationError("--op", "unknown op " + op);
    }
    LoadedIndex li = load_index(index);
    if (op == "count") {
        if (!li.fmi) throw std::runtime_error("count requires an fmi container");
        std::vector<uint32_t> pat(args.begin(), args.end());
        std::cout << li.fmi->count(pat) << "\n";
        return 0;
    }
    if (!li.seq) throw std::runtime_error("rsa queries need a sequence container");
    if (op == "access")
        std::cout << li.seq->access(args[0]) << "\n";
    else if (op == "rank")
        std::cout << li.seq->rank(static_cast<uint32_t>(args[0]), args[1]) << "\n";
    else
        std::cout << li.seq->select(static_cast<uint32_t>(args[0]), args[1]) << "\n";
    return 0;
}

struct Query {
    uint64_t x = 0;  // position / occurrence index
    uint32_t a = 0;  // symbol
};

int cmd_bench(const std::string& index, const std::string& op, uint64_t nqueries, uint64_t seed,
              unsigned threads, unsigned pattern_len, bool verify) {
    if (nqueries == 0) throw std::runtime_error("--queries must be positive");
    if (threads == 0) threads = 1;
    LoadedIndex li = load_index(index);
    SplitMix64 rng(seed);

    std::vector<Query> qs(nqueries);
    std::vector<std::vector<uint32_t>> pats;
    double bps = 0;
    std::vector<uint32_t> text;

    if (li.fmi) {
        if (op != "count") throw std::runtime_error("fmi containers benchmark op=count");
        text = li.fmi->invert();
        bps = double(li.fmi->size_in_bits()) / double(text.size());
        pats.resize(nqueries);
        for (auto& p : pats) {
            size_t m = std::min<size_t>(pattern_len, text.size());
            size_t st = rng.below(text.size() - m + 1);
            p.assign(text.begin() + st, text.begin() + st + m);
        }
    } else {
        const Sequence& ix = *li.seq;
        size_t n = ix.size();
        bps = double(ix.size_in_bits()) / double(n);
        // workload: access hits uniform positions; rank uses position p and
        // symbol S[p]; select uses symbol S[p] and a uniform occurrence index
        for (auto& q : qs) {
            uint64_t p = 1 + rng.below(n);
            if (op == "access") {
                q.x = p;
            } else if (op == "rank") {
                q.a = ix.access(p);
                q.x = p;
            } else if (op == "select") {
                q.a = ix.access(p);
                q.x = 1 + rng.below(ix.rank(q.a, n));
            } else {
                throw std::runtime_error("unknown op " + op);
            }
        }
        if (verify) text.reserve(n);
        if (verify)
            for (size_t i = 1; i <= n; ++i) text.push_back(ix.access(i));
    }

    std::atomic<uint64_t> sink{0};
    auto worker = [&](size_t lo, size_t hi) {
        uint64_t acc = 0;
        for (size_t k = lo; k < hi; ++k) {
            if (li.fmi) {
                acc += li.fmi->count(pats[k]);
            } else if (op == "access") {
                acc += li.seq->access(qs[k].x);
            } else if (op == "rank") {
                acc += li.seq->rank(qs[k].a, qs[k].x);
            } else {
                acc += li.seq->select(qs[k].a, qs[k].x);
            }
        }
        sink += acc;
    };
    auto t0 = std::chrono::steady_clock::now();
    if (threads == 1) {
        worker(0, nqueries);
    } else {
        std::vector<std::thread> pool;
        size_t per = (nqueries + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            size_t lo = t * per, hi = std::min<size_t>(nqueries, lo + per);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    auto t1 = std::chrono::steady_clock::now();
    double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
    double avg = us * threads / double(nqueries);

    if (verify) {
        auto naive_rank = [&](uint32_t a, uint64_t i) {
            uint64_t c = 0;
            for (uint64_t k = 0; k < i; ++k) c += text[k] == a;
            return c;
        };
        for (size_t k = 0; k < nqueries; ++k) {
            if (li.fmi) {
                uint64_t c = 0;
                const auto& p = pats[k];
                for (size_t i = 0; i + p.size() <= text.size(); ++i) {
                    bool ok = true;
                    for (size_t d = 0; d < p.size() && ok; ++d) ok = text[i + d] == p[d];
                    c += ok;
                }
                if (li.fmi->count(p) != c) throw std::runtime_error("verification failed: count");
            } else if (op == "access") {
                if (li.seq->access(qs[k].x) != text[qs[k].x - 1])
                    throw std::runtime_error("verification failed: access");
            } else if (op == "rank") {
                if (li.seq->rank(qs[k].a, qs[k].x) != naive_rank(qs[k].a, qs[k].x))
                    throw std::runtime_error("verification failed: rank");
            } else {
                uint64_t pos = li.seq->select(qs[k].a, qs[k].x);
                if (pos < 1 || pos > text.size() || text[pos - 1] != qs[k].a ||
                    naive_rank(qs[k].a, pos) != qs[k].x)
                    throw std::runtime_error("verification failed: select");
            }
        }
    }
    std::cout << "structure,op,bits_per_symbol,avg_microseconds\n";
    std::cout << structure_name(li.tag) << ',' << op << ',' << bps << ',' << avg << "\n";
    (void)sink.load();
    return 0;
}

int cmd_gen_dna(const std::string& base_path, const std::string& format, uint64_t base_len,
                uint32_t sigma, uint64_t copies, double mutation, uint64_t seed,
                const std::string& output, const std::string& out_format) {
    std::vector<uint32_t> base;
    if (!base_path.empty()) {
        SeqFile f = read_sequence_file(base_path, format);
        base = std::move(f.data);
        sigma = f.sigma;
    } else {
        SplitMix64 rng(seed ^ 0x5eedULL);
        base.resize(base_len);
        for (auto& x : base) x = 1 + static_cast<uint32_t>(rng.below(sigma));
    }
    std::vector<uint32_t> out = gen_dna(base, sigma, copies, mutation, seed);
    std::ofstream os(output, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + output);
    if (out_format == "raw8")
        write_raw8(os, out);
    else
        write_u32le(os, out, sigma);
    std::cout << "wrote " << out.size() << " symbols (sigma " << sigma << ") to " << output
              << "\n";
    return 0;
}

int cmd_stats(const std::string& input, const std::string& format, std::string name) {
    SeqFile f = read_sequence_file(input, format);
    if (f.data.empty()) throw std::runtime_error("input is empty");
    if (name.empty()) name = input;
    CorpusReport r = corpus_report(f.data, f.sigma, name);
    std::cout << CorpusReport::csv_header() << "\n" << r.csv_row() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank/select/access over grammar-compressed sequences"};
    app.require_subcommand(1);

    BuildOpts bo;
    auto* b = app.add_subcommand("build", "build an index container from a sequence file");
    b->add_option("--input", bo.input)->required();
    b->add_option("--format", bo.format)->check(CLI::IsMember({"raw8", "u32le"}));
    b->add_option("--structure", bo.structure)->required();
    b->add_option("--backend", bo.backend);
    b->add_option("-s,--sample", bo.s);
    b->add_option("--sprime", bo.sprime);
    b->add_option("--delta", bo.delta);
    b->add_option("--cut", bo.cut);
    b->add_option("--cuto", bo.cuto);
    b->add_option("--arity", bo.arity);
    b->add_option("--shape", bo.shape)->check(CLI::IsMember({"", "balanced", "huffman"}));
    b->add_option("--output", bo.output)->required();

    std::string q_index, q_op;
    std::vector<uint64_t> q_args;
    auto* q = app.add_subcommand("query", "run one query against a container");
    q->add_option("--index", q_index)->required();
    q->add_option("--op", q_op)->required();
    q->add_option("--args", q_args);

    std::string be_index, be_op = "rank";
    uint64_t be_n = 10000, be_seed = 1;
    unsigned be_threads = 1, be_plen = 4;
    bool be_verify = false;
    auto* be = app.add_subcommand("bench", "time a query workload, print CSV");
    be->add_option("--index", be_index)->required();
    be->add_option("--op", be_op);
    be->add_option("--queries", be_n);
    be->add_option("--seed", be_seed);
    be->add_option("--threads", be_threads);
    be->add_option("--pattern-len", be_plen);
    be->add_flag("--verify", be_verify, "cross-check answers against a naive oracle");

    std::string g_base, g_format = "raw8", g_out, g_outfmt = "raw8";
    uint64_t g_len = 1000, g_copies = 100, g_seed = 1;
    uint32_t g_sigma = 4;
    double g_mut = 0.0;
    auto* g = app.add_subcommand("gen-dna", "generate a synthetic repetitive sequence");
    g->add_option("--base", g_base, "base sequence file (random base if omitted)");
    g->add_option("--format", g_format)->check(CLI::IsMember({"raw8", "u32le"}));
    g->add_option("--base-len", g_len);
    g->add_option("--sigma", g_sigma);
    g->add_option("--copies", g_copies);
    g->add_option("--mutation", g_mut);
    g->add_option("--seed", g_seed);
    g->add_option("--output", g_out)->required();
    g->add_option("--out-format", g_outfmt)->check(CLI::IsMember({"raw8", "u32le"}));

    std::string s_input, s_format = "raw8", s_name;
    auto* st = app.add_subcommand("stats", "entropy / compressibility report as CSV");
    st->add_option("--input", s_input)->required();
    st->add_option("--format", s_format)->check(CLI::IsMember({"raw8", "u32le"}));
    st->add_option("--name", s_name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*b) return cmd_build(bo);
        if (*q) return cmd_query(q_index, q_op, q_args);
        if (*be) return cmd_bench(be_index, be_op, be_n, be_seed, be_threads, be_plen, be_verify);
        if (*g) return cmd_gen_dna(g_base, g_format, g_len, g_sigma, g_copies, g_mut, g_seed,
                                   g_out, g_outfmt);
        if (*st) return cmd_stats(s_input, s_format, s_name);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
