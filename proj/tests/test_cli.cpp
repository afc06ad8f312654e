#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "truthdiscover/cli.hpp"
#include "truthdiscover/io.hpp"

using namespace truthdiscover;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "truthdiscover");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// BR of the DBpedia row in prior.tsv: the first data row.
double top_br(const fs::path& dir) {
    std::istringstream in(read_file(dir / "prior.tsv"));
    std::string header, src;
    double br = 0;
    std::getline(in, header);
    in >> src >> br;
    return br;
}

}  // namespace

TEST_CASE("resolve writes its outputs for the Statue of Liberty fixture") {
    auto dir = testsupport::scratch_dir("cli_resolve");
    auto r = cli({"resolve", "--input", testsupport::fixture("statue_of_liberty.nt"), "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(count_lines(read_file(dir / "decisions.jsonl")) == 2);
    CHECK(fs::exists(dir / "trace.csv"));
    CHECK(count_lines(read_file(dir / "source_trust.tsv")) == 5);
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("missing input is fatal") {
    auto r = cli({"resolve"});
    CHECK(r.code == kExitFatal);
    CHECK(r.err.find("--input") != std::string::npos);
    CHECK(cli({"frobnicate"}).code == kExitFatal);
    CHECK(cli({"resolve", "--help"}).code == kExitOk);
}

TEST_CASE("flags override the config file") {
    auto dir = testsupport::scratch_dir("cli_precedence");
    write_text(dir / "run.ini", "[prior]\ndamping = 0.5\n");
    const std::string in = testsupport::fixture("statue_of_liberty.nt");
    // Three sources point at DBpedia: BR = (1 - d) + 3 d (1 - d).
    REQUIRE(cli({"prior", "-i", in, "-o", (dir / "a").string()}).code == kExitOk);
    CHECK(std::abs(top_br(dir / "a") - 0.5325) <= 1e-9);
    REQUIRE(cli({"prior", "-i", in, "-o", (dir / "b").string(), "-c", (dir / "run.ini").string()}).code == kExitOk);
    CHECK(std::abs(top_br(dir / "b") - 1.25) <= 1e-9);
    REQUIRE(cli({"prior", "-i", in, "-o", (dir / "c").string(), "-c", (dir / "run.ini").string(), "--damping", "0.9"})
                .code == kExitOk);
    CHECK(std::abs(top_br(dir / "c") - 0.37) <= 1e-9);
}

TEST_CASE("bad configuration is fatal") {
    auto dir = testsupport::scratch_dir("cli_badcfg");
    write_text(dir / "bad.ini", "[prior]\nwobble = 1\n");
    auto r = cli({"prior", "-i", testsupport::fixture("statue_of_liberty.nt"), "-o", dir.string(), "-c", (dir / "bad.ini").string()});
    CHECK(r.code == kExitFatal);
    CHECK(cli({"prior", "-i", testsupport::fixture("statue_of_liberty.nt"), "-o", dir.string(), "--damping", "1.5"}).code ==
          kExitFatal);
}

TEST_CASE("prior on a corpus without sameAs links is fatal") {
    auto dir = testsupport::scratch_dir("cli_empty_sbg");
    write_text(dir / "plain.nt", "<http://a.org/x> <http://e.org/p> \"1\" .\n<http://b.org/x> <http://e.org/p> \"2\" .\n");
    auto r = cli({"prior", "-i", (dir / "plain.nt").string(), "-o", dir.string()});
    CHECK(r.code == kExitFatal);
    CHECK(!fs::exists(dir / "prior.tsv"));
    auto resolved = cli({"resolve", "-i", (dir / "plain.nt").string(), "-o", dir.string()});
    CHECK(resolved.code == kExitOk);
    CHECK(!resolved.err.empty());
}

TEST_CASE("reruns produce identical files") {
    auto dir = testsupport::scratch_dir("cli_repeat");
    const std::string in = testsupport::fixture("statue_of_liberty.nt");
    REQUIRE(cli({"prior", "-i", in, "-o", (dir / "p1").string()}).code == kExitOk);
    REQUIRE(cli({"prior", "-i", in, "-o", (dir / "p2").string()}).code == kExitOk);
    CHECK(read_file(dir / "p1" / "prior.tsv") == read_file(dir / "p2" / "prior.tsv"));
    CHECK(read_file(dir / "p1" / "sbg.tsv") == read_file(dir / "p2" / "sbg.tsv"));
    REQUIRE(cli({"synth", "--seed", "5", "--conflicts", "200", "--entities", "80", "-o", (dir / "s1").string()}).code ==
            kExitOk);
    REQUIRE(cli({"synth", "--seed", "5", "--conflicts", "200", "--entities", "80", "-o", (dir / "s2").string()}).code ==
            kExitOk);
    CHECK(read_file(dir / "s1" / "synthetic.nt") == read_file(dir / "s2" / "synthetic.nt"));
    CHECK(read_file(dir / "s1" / "gold.tsv") == read_file(dir / "s2" / "gold.tsv"));
}

TEST_CASE("thread count does not change resolve output") {
    auto dir = testsupport::scratch_dir("cli_threads");
    REQUIRE(cli({"synth", "--seed", "9", "--conflicts", "400", "--entities", "150", "-o", dir.string()}).code == kExitOk);
    const std::string in = (dir / "synthetic.nt").string();
    REQUIRE(cli({"resolve", "-i", in, "-o", (dir / "t1").string(), "--threads", "1"}).code == kExitOk);
    REQUIRE(cli({"resolve", "-i", in, "-o", (dir / "t4").string(), "--threads", "4"}).code == kExitOk);
    for (const char* f : {"decisions.jsonl", "trace.csv", "source_trust.tsv"})
        CHECK(read_file(dir / "t1" / f) == read_file(dir / "t4" / f));
}

TEST_CASE("an iteration cap that is too small exits with the convergence code") {
    auto dir = testsupport::scratch_dir("cli_cap");
    REQUIRE(cli({"synth", "--seed", "9", "--conflicts", "300", "--entities", "100", "-o", dir.string()}).code == kExitOk);
    auto r = cli({"resolve", "-i", (dir / "synthetic.nt").string(), "-o", dir.string(), "--outer-max", "1"});
    CHECK(r.code == kExitNotConverged);
    CHECK(fs::exists(dir / "decisions.jsonl"));
}

TEST_CASE("eval and baseline commands") {
    auto dir = testsupport::scratch_dir("cli_eval");
    auto r = cli({"eval", "--seed", "1", "--seeds", "2", "--conflicts", "200", "--entities", "80", "-o", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "trace_seed1.csv"));
    CHECK(fs::exists(dir / "trace_seed2.csv"));
    CHECK(r.out.find("vote") != std::string::npos);

    REQUIRE(cli({"synth", "--seed", "4", "--conflicts", "200", "--entities", "80", "-o", dir.string()}).code == kExitOk);
    const std::string in = (dir / "synthetic.nt").string();
    CHECK(cli({"eval", "-i", in, "-o", dir.string()}).code == kExitFatal);
    CHECK(cli({"eval", "-i", in, "--gold", (dir / "gold.tsv").string(), "-o", (dir / "labelled").string(), "--outer-max", "200"}).code ==
          kExitOk);
    CHECK(cli({"baseline", "-i", in, "-o", dir.string(), "--method", "vote"}).code == kExitOk);
    CHECK(fs::exists(dir / "decisions_vote.jsonl"));
    CHECK(!fs::exists(dir / "decisions_truthfinder.jsonl"));
    CHECK(cli({"baseline", "-i", in, "-o", dir.string(), "--method", "nonsense"}).code == kExitFatal);
}
