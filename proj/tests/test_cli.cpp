#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gcrs/gcrs.hpp"
#include "oracle.hpp"

namespace {

std::string g_cli;
std::string g_dir;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string outfile = g_dir + "/out.txt";
    std::string cmd = g_cli + " " + args + " >" + outfile + " 2>&1";
    int st = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    std::ifstream is(outfile);
    std::stringstream ss;
    ss << is.rdbuf();
    r.out = ss.str();
    return r;
}

}  // namespace

TEST_CASE("usage errors exit with 2, help with 0") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("build --structure wt").code == 2);         // missing required options
    CHECK(run("query --index x --op access").code == 2);  // bad arg count for op
    CHECK(run("--help").code == 0);
    CHECK(run("build --help").code == 0);
}

TEST_CASE("data errors exit with 1") {
    CHECK(run("build --input " + g_dir + "/nope.raw --structure wt --output " + g_dir +
              "/o.idx")
              .code == 1);
    CHECK(run("stats --input " + g_dir + "/nope.raw").code == 1);
    // garbage container
    std::ofstream(g_dir + "/junk.idx") << "not a container";
    CHECK(run("query --index " + g_dir + "/junk.idx --op access --args 1").code == 1);
}

TEST_CASE("generate, build, query pipeline") {
    std::string data = g_dir + "/seq.raw";
    RunResult g = run("gen-dna --base-len 200 --sigma 4 --copies 30 --mutation 0.01 --seed 9 "
                      "--output " + data);
    REQUIRE(g.code == 0);

    std::ifstream is(data, std::ios::binary);
    gcrs::SeqFile f = gcrs::read_raw8(is);
    REQUIRE(f.data.size() == 6000);

    for (std::string st : {"gcc-n", "gcc-c", "wt", "wth", "wm", "wmh", "mwt", "mwth", "ap",
                           "ap-rp"}) {
        std::string idx = g_dir + "/" + st + ".idx";
        RunResult b = run("build --input " + data + " --structure " + st + " --output " + idx);
        REQUIRE_MESSAGE(b.code == 0, st << ": " << b.out);
        CHECK(b.out.find("bits/symbol") != std::string::npos);

        auto q = [&](const std::string& spec) {
            RunResult r = run("query --index " + idx + " --op " + spec);
            REQUIRE_MESSAGE(r.code == 0, st << " " << spec << ": " << r.out);
            return std::stoull(r.out);
        };
        CHECK(q("access --args 17") == f.data[16]);
        CHECK(q("rank --args 2 100") == oracle::rank(f.data, 2, 100));
        CHECK(q("select --args 3 5") == oracle::select(f.data, 3, 5));
    }
}

TEST_CASE("full-text index and benchmarks") {
    std::string data = g_dir + "/seq2.raw";
    REQUIRE(run("gen-dna --base-len 100 --sigma 3 --copies 20 --seed 3 --output " + data).code ==
            0);
    std::string idx = g_dir + "/fmi.idx";
    REQUIRE(run("build --input " + data + " --structure fmi --backend gcc --output " + idx)
                .code == 0);

    std::ifstream is(data, std::ios::binary);
    gcrs::SeqFile f = gcrs::read_raw8(is);
    std::vector<uint32_t> pat(f.data.begin(), f.data.begin() + 4);
    std::string args;
    for (uint32_t x : pat) args += " " + std::to_string(x);
    RunResult c = run("query --index " + idx + " --op count --args" + args);
    REQUIRE(c.code == 0);
    CHECK(std::stoull(c.out) == oracle::count_occ(f.data, pat));

    RunResult bench = run("bench --index " + idx + " --op count --queries 20 --pattern-len 4 "
                          "--verify");
    REQUIRE_MESSAGE(bench.code == 0, bench.out);
    CHECK(bench.out.find("structure,op,bits_per_symbol,avg_microseconds") != std::string::npos);
    CHECK(bench.out.find("fmi,count,") != std::string::npos);

    std::string sidx = g_dir + "/bwt.idx";
    REQUIRE(run("build --input " + data + " --structure gcc-n -s 64 --output " + sidx).code == 0);
    for (std::string op : {"access", "rank", "select"}) {
        RunResult r = run("bench --index " + sidx + " --op " + op +
                          " --queries 200 --verify --threads 2");
        REQUIRE_MESSAGE(r.code == 0, op << ": " << r.out);
        CHECK(r.out.find("gcc-n," + op + ",") != std::string::npos);
    }
}

TEST_CASE("stats and u32le output format") {
    std::string data = g_dir + "/seq3.sq";
    REQUIRE(run("gen-dna --base-len 50 --sigma 4 --copies 10 --seed 5 --output " + data +
                " --out-format u32le")
                .code == 0);
    RunResult st = run("stats --input " + data + " --format u32le --name demo");
    REQUIRE_MESSAGE(st.code == 0, st.out);
    CHECK(st.out.find("dataset,n,sigma,h0,h1,h2,h3,repair_bps,bwt_runs_ratio") !=
          std::string::npos);
    CHECK(st.out.find("demo,500,4,") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli> [doctest args]\n", argv[0]);
        return 1;
    }
    g_cli = argv[1];
    char tmpl[] = "/tmp/gcrs_cli_XXXXXX";
    g_dir = mkdtemp(tmpl);
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
