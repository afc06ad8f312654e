// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. argv[1] is the path of the truthdiscover binary.

#include <sys/resource.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "test_support.hpp"
#include "truthdiscover/engine.hpp"
#include "truthdiscover/evaluation.hpp"
#include "truthdiscover/io.hpp"
#include "truthdiscover/pipeline.hpp"
#include "truthdiscover/rdf.hpp"

using namespace truthdiscover;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Outcome bp_oracle() {
    Outcome o;
    testsupport::Rand rng(1001);
    const BpConfig tight{0.3, 1e-14, 5000};
    double tree_err = 0.0;
    for (int trial = 0; trial < 250; ++trial) {
        std::size_t m = 1 + rng.below(12);
        MarkovField f(m);
        for (std::size_t i = 0; i < m; ++i) f.set_unary(i, rng.uniform(0.1, 3), rng.uniform(0.1, 3));
        for (std::size_t i = 1; i < m; ++i) {
            PairTable psi{};
            for (auto& row : psi)
                for (auto& v : row) v = rng.uniform(0.1, 3);
            f.add_edge(rng.below(i), i, psi);
        }
        auto bp = loopy_bp(f, tight);
        auto exact = oracle::enumerate_marginals(f);
        for (std::size_t i = 0; i < m; ++i) tree_err = std::max(tree_err, std::abs(bp.p_true(i) - exact[i]));
    }
    double loopy_err = 0.0;
    std::size_t unconverged = 0;
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t m = 3 + rng.below(8);
        std::vector<double> base(m);
        for (auto& b : base) b = rng.uniform(0.0, 1.0);
        std::vector<PairSimilarity> pairs;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) pairs.push_back({i, j, rng.uniform(0.0, 1.0)});
        FieldParams params;
        params.coupling = rng.uniform(0.05, 1.0);
        auto f = build_field(base, pairs, params);
        auto bp = loopy_bp(f);
        if (!bp.converged) {
            ++unconverged;
            continue;
        }
        auto exact = oracle::enumerate_marginals(f);
        for (std::size_t i = 0; i < m; ++i) loopy_err = std::max(loopy_err, std::abs(bp.p_true(i) - exact[i]));
    }
    o.require(tree_err <= 1e-9, "tree error " + fmt(tree_err));
    o.require(loopy_err <= 0.05, "loopy error " + fmt(loopy_err));
    o.require(unconverged <= 50, std::to_string(unconverged) + " loopy fields unconverged");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("250 trees max err ") + fmt(tree_err) + ", " +
                std::to_string(150 - unconverged) + " loopy fields max err " + fmt(loopy_err);
    return o;
}

Outcome prior_fixed_point() {
    Outcome o;
    auto S = [](std::string s) { return SourceId(std::move(s)); };
    {
        SourceBeliefGraph g;
        g.add_vertex(S("a"));
        auto p = compute_prior(g);
        o.require(near(p.br.at(S("a")), 0.15, 1e-12), "isolated");
    }
    {
        SourceBeliefGraph g;
        g.add_edge(S("a"), S("b"));
        auto p = compute_prior(g);
        o.require(near(p.br.at(S("a")), 0.15, 1e-12) && near(p.br.at(S("b")), 0.2775, 1e-12), "chain");
    }
    {
        SourceBeliefGraph g;
        g.add_edge(S("a"), S("b"), 2);
        g.add_edge(S("a"), S("c"), 1);
        auto p = compute_prior(g);
        o.require(near(p.br.at(S("b")), 0.235, 1e-12) && near(p.br.at(S("c")), 0.1925, 1e-12), "multi-edge");
    }
    testsupport::Rand rng(2002);
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t n = trial == 0 ? 1000 : 2 + rng.below(999);
        std::size_t e = trial == 0 ? 10000 : 1 + rng.below(10000);
        SourceBeliefGraph g;
        for (std::size_t k = 0; k < n; ++k) g.add_vertex(S("v" + std::to_string(k)));
        for (std::size_t k = 0; k < e; ++k) {
            std::size_t a = rng.below(n), b = rng.below(n);
            if (a != b) g.add_edge(S("v" + std::to_string(a)), S("v" + std::to_string(b)));
        }
        auto p = compute_prior(g);
        o.require(p.converged, "sweep budget exhausted");
        worst = std::max(worst, prior_residual(g, p.br, 0.85));
    }
    o.require(worst <= 1e-8, "residual " + fmt(worst));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("12 random multigraphs, worst residual ") + fmt(worst);
    return o;
}

Outcome equation_algebra() {
    Outcome o;
    const double ulp = 1e-15;
    std::vector<double> taus{0.2, 0.4, 0.9};
    o.require(near(mean_trust(taus, 0.5), 0.5, ulp), "mean trust");
    std::vector<double> one{1.0};
    o.require(mean_trust(one, 0.5) == 1.0, "single object trust");
    o.require(near(smooth_trustworthiness(0.8, 0.6), 0.7, ulp), "smoothing");
    o.require(smooth_trustworthiness(0.5, 0.5) == 0.5, "neutral smoothing");

    PriorBeliefs flat;
    flat.br = {{SourceId("a"), 0.15}, {SourceId("b"), 0.5}, {SourceId("c"), 0.85}};
    normalize_prior(flat);
    o.require(near(flat.nbr.at(SourceId("a")), 0.0, ulp) && near(flat.nbr.at(SourceId("b")), 0.5, ulp) &&
                  near(flat.nbr.at(SourceId("c")), 1.0, ulp),
              "normalization endpoints");
    PriorBeliefs same;
    same.br = {{SourceId("a"), 0.15}, {SourceId("b"), 0.15}};
    normalize_prior(same);
    o.require(same.nbr.at(SourceId("a")) == 0.5 && same.nbr.at(SourceId("b")) == 0.5, "constant normalization");
    SourceBeliefGraph g;
    g.add_edge(SourceId("A"), SourceId("B"), 2);
    g.add_edge(SourceId("A"), SourceId("C"), 1);
    auto p = compute_prior(g);
    normalize_prior(p);
    o.require(near(p.nbr.at(SourceId("A")), 0.0, 1e-12) && near(p.nbr.at(SourceId("B")), 1.0, 1e-12) &&
                  near(p.nbr.at(SourceId("C")), 0.5, 1e-12),
              "derived normalization");

    ConflictSet set{EntityClusterId("e"), PredicateId("p"),
                    {{NormalizedValue::number(1), {SourceId("x"), SourceId("y")}}, {NormalizedValue::number(2), {SourceId("z")}}}};
    std::map<std::string, double> tp{{"x", 0.7}, {"y", 0.9}, {"z", 0.3}};
    auto base = object_base_trust(set, [&](const SourceId& s) { return tp.at(s.str()); });
    o.require(near(base[0], 0.8, ulp) && base[1] == 0.3, "base trust");
    ConflictSet height{EntityClusterId("e"), PredicateId("height"),
                       {{NormalizedValue::number(46.0248), {SourceId("yago")}}, {NormalizedValue::number(93), {SourceId("freebase")}}}};
    auto hb = object_base_trust(height, [](const SourceId&) { return 0.5; });
    o.require(hb[0] == 0.5 && hb[1] == 0.5, "symmetric base trust");

    // Invariant at every stored state: stop the loop after k iterations.
    SynthConfig cfg;
    cfg.n_conflicts = 600;
    cfg.n_entities = 200;
    auto data = generate(cfg);
    auto parsed = parse_triples(data.ntriples, RdfFormat::NTriples, ParseMode::Strict);
    auto in = prepare(Corpus::single(parsed.statements), SourcePolicy::Host);
    auto pri = priors_or_neutral(in.sbg, {});
    double worst = 0.0;
    std::size_t states = 0;
    for (std::size_t k = 1; k <= 20; ++k) {
        EngineConfig ec;
        ec.outer_max = k;
        auto res = resolve_all(in.store, pri, ec);
        const auto& st = res.state;
        for (std::size_t s = 0; s < st.sources.size(); ++s)
            worst = std::max(worst, std::abs(st.t_smoothed[s] - (st.nbr[s] + st.t[s]) / 2.0));
        ++states;
        if (res.converged) break;
    }
    o.require(worst <= 1e-12, "invariant " + fmt(worst));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("unit examples checked, invariant over ") +
                std::to_string(states) + " states max err " + fmt(worst);
    return o;
}

Outcome directional_accuracy(const BatchReport& batch, double batch_seconds) {
    Outcome o;
    double td = batch.mean_accuracy("truthdiscover");
    double vote = batch.mean_accuracy("vote");
    std::size_t wins = batch.wins("truthdiscover", "vote");
    o.require(td > vote, "mean accuracy not above vote");
    o.require(wins >= 8, "wins on only " + std::to_string(wins) + " seeds");

    auto t0 = Clock::now();
    SynthConfig uni;
    uni.values_per_conflict = 4;
    uni.uniform_support = true;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
    auto flat = run_batch(uni, seeds);
    double uni_vote = flat.mean_accuracy("vote");
    o.require(uni_vote < 0.5, "uniform-support vote accuracy " + fmt(uni_vote));
    double total = batch_seconds + seconds_since(t0);
    o.require(total < 120.0, "runtime " + fmt(total) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("truthdiscover ") + fmt(td) + " vs vote " + fmt(vote) +
                ", wins " + std::to_string(wins) + "/10, uniform-support vote " + fmt(uni_vote) + ", " + fmt(total) + " s";
    return o;
}

Outcome convergence_shape(const BatchReport& batch) {
    Outcome o;
    std::size_t converged = 0;
    double worst_ratio = 0.0, mean_ratio = 0.0;
    for (const auto& run : batch.runs) {
        const auto& td = run.method("truthdiscover");
        if (td.converged && td.iterations <= 20) ++converged;
        if (td.trace.size() < 5) continue;
        double ratio = td.trace[4].mean_delta_tau / td.trace[0].mean_delta_tau;
        worst_ratio = std::max(worst_ratio, ratio);
        mean_ratio += ratio / static_cast<double>(batch.runs.size());
    }
    o.require(worst_ratio < 0.25, "iteration-5 ratio " + fmt(worst_ratio));
    o.require(converged >= 9, "converged on " + std::to_string(converged) + " seeds");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("iteration-5 / iteration-1 mean ratio ") + fmt(mean_ratio) +
                " (worst " + fmt(worst_ratio) + "), converged on " + std::to_string(converged) + "/10 seeds";
    return o;
}

Outcome statue_of_liberty() {
    Outcome o;
    const std::string path = testsupport::fixture("statue_of_liberty.nt");
    std::vector<Diagnostic> diags;
    Corpus corpus = load_corpus({path}, ParseMode::Strict, diags);
    auto in = prepare(corpus, SourcePolicy::Host);
    const auto& sets = in.store.conflict_sets();
    o.require(sets.size() == 2, std::to_string(sets.size()) + " conflict sets");

    auto parsed = parse_triples(read_file(path), RdfFormat::NTriples, ParseMode::Strict);
    std::set<NormalizedValue> dates;
    std::size_t forms = 0;
    for (const auto& st : parsed.statements) {
        if (st.predicate != "http://dbpedia.org/property/beginningDate") continue;
        ++forms;
        if (auto v = normalize_term(st.object)) dates.insert(*v);
    }
    const auto full = NormalizedValue::date({1886, 10, 28});
    const auto partial = NormalizedValue::date({1886, std::nullopt, std::nullopt});
    o.require(forms == 4 && dates == std::set<NormalizedValue>{full, partial}, "date forms");
    o.require(similarity(full, partial) == 1.0, "date similarity");

    auto res = resolve_all(in.store, PriorBeliefs{});
    bool chosen = false;
    for (const auto& d : res.decisions)
        if (d.predicate.str() == "http://dbpedia.org/property/beginningDate") chosen = d.chosen == full;
    o.require(chosen, "beginningDate decision");
    if (o.pass) o.detail = "2 conflict sets, 4 date forms -> 2 values, chosen 1886-10-28";
    return o;
}

int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome determinism(const std::string& exe) {
    Outcome o;
    auto dir = testsupport::scratch_dir("acceptance_determinism");
    o.require(run(quote(exe) + " synth --seed 7 -o " + quote(dir) + " > /dev/null") == 0, "synth failed");
    std::vector<std::pair<std::string, std::string>> inputs{{"synthetic", (dir / "synthetic.nt").string()},
                                                            {"statue_of_liberty", testsupport::fixture("statue_of_liberty.nt")}};
    std::size_t compared = 0;
    for (const auto& [name, input] : inputs) {
        std::vector<fs::path> outs;
        for (const char* threads : {"1", "1", "4", "4"}) {
            fs::path out = dir / (name + "_" + std::to_string(outs.size()));
            int rc = run(quote(exe) + " resolve -i " + quote(input) + " -o " + quote(out) + " --threads " + threads +
                         " > /dev/null 2>&1");
            o.require(rc == 0 || rc == 2, "resolve exit " + std::to_string(rc));
            outs.push_back(out);
        }
        for (const char* file : {"decisions.jsonl", "trace.csv"}) {
            std::string ref = read_file(outs[0] / file);
            for (std::size_t k = 1; k < outs.size(); ++k) {
                o.require(read_file(outs[k] / file) == ref, name + "/" + file + " differs");
                ++compared;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(compared) + " file pairs byte-identical across reruns and --threads 1/4";
    return o;
}

Outcome scale(const std::string& exe) {
    Outcome o;
    auto dir = testsupport::scratch_dir("acceptance_scale");
    SynthConfig cfg;
    cfg.n_sources = 500;
    cfg.n_entities = 130174;
    cfg.n_conflicts = 7506;
    cfg.seed = 8;
    auto data = generate(cfg);
    write_atomic(dir / "scale.nt", data.ntriples);
    const std::size_t bytes = data.ntriples.size();
    const std::size_t gold = data.gold.truth.size();
    data = SynthData{};

    auto t0 = Clock::now();
    int rc = run(quote(exe) + " resolve -i " + quote(dir / "scale.nt") + " -o " + quote(dir / "out") +
                 " --threads 4 > " + quote(dir / "summary.txt") + " 2>&1");
    double secs = seconds_since(t0);
    rusage usage{};
    getrusage(RUSAGE_CHILDREN, &usage);
    double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;

    std::istringstream lines(read_file(dir / "out" / "decisions.jsonl"));
    std::size_t decisions = 0;
    for (std::string line; std::getline(lines, line);) ++decisions;

    o.require(rc == 0 || rc == 2, "resolve exit " + std::to_string(rc));
    o.require(decisions == gold, std::to_string(decisions) + " decisions for " + std::to_string(gold) + " gold keys");
    o.require(secs < 300.0, "runtime " + fmt(secs) + " s");
    o.require(peak_mb < 4096.0, "peak memory " + fmt(peak_mb) + " MB");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(cfg.n_entities) + " entities, " +
                std::to_string(decisions) + " conflict sets, " + fmt(static_cast<double>(bytes) / 1e6) + " MB input, " +
                fmt(secs) + " s, peak RSS " + fmt(peak_mb) + " MB, exit " + std::to_string(rc);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path to truthdiscover>\n";
        return 2;
    }
    const std::string exe = fs::absolute(argv[1]).string();

    int failures = 0;
    auto report = [&](int n, const std::string& name, const std::function<Outcome()>& check) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << "  " << name << "  [" << fmt(seconds_since(t0))
                  << " s]  " << o.detail << std::endl;
    };

    report(1, "bp-oracle", bp_oracle);
    report(2, "prior-fixed-point", prior_fixed_point);
    report(3, "equation-algebra", equation_algebra);

    BatchReport batch;
    double batch_seconds = 0.0;
    {
        auto t0 = Clock::now();
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
        batch = run_batch(SynthConfig{}, seeds);
        batch_seconds = seconds_since(t0);
    }
    report(4, "directional-accuracy", [&] { return directional_accuracy(batch, batch_seconds); });
    report(5, "convergence-shape", [&] { return convergence_shape(batch); });
    report(6, "statue-of-liberty-end-to-end", statue_of_liberty);
    report(7, "determinism", [&] { return determinism(exe); });
    report(8, "scale", [&] { return scale(exe); });
    return failures == 0 ? 0 : 1;
}
