#include "truthdiscover/cli.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "truthdiscover/baselines.hpp"
#include "truthdiscover/config.hpp"
#include "truthdiscover/evaluation.hpp"
#include "truthdiscover/io.hpp"
#include "truthdiscover/pipeline.hpp"

namespace truthdiscover {

namespace {

namespace fs = std::filesystem;

// Flag values are kept as text and applied through the config key table
// after the config file, so the command line always wins.
struct FlagSet {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::vector<std::string> inputs;
    CLI::Option* input_opt = nullptr;
    std::string config;
    bool strict = false;
    bool uniform = false;
    CLI::Option* strict_opt = nullptr;
    CLI::Option* uniform_opt = nullptr;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        options[key] = app->add_option(flag, values[key], help);
    }

    RunConfig resolve() {
        RunConfig cfg;
        if (!config.empty()) apply_config_file(cfg, config);
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) set_config_value(cfg, key, values[key]);
        }
        if (input_opt && input_opt->count() > 0) cfg.inputs = inputs;
        if (strict_opt && strict_opt->count() > 0) cfg.strict = true;
        if (uniform_opt && uniform_opt->count() > 0) cfg.synth.uniform_support = true;
        return cfg;
    }
};

void add_common(CLI::App* app, FlagSet& f, bool with_input) {
    if (with_input) {
        f.input_opt = app->add_option("-i,--input", f.inputs, "N-Triples / N-Quads files (.gz accepted)");
        f.add(app, "--policy", "run.policy", "source policy: host, pld or graph");
        f.add(app, "--alignment", "run.alignment", "predicate alignment TSV");
        f.strict_opt = app->add_flag("--strict", f.strict, "fail on the first malformed line");
    }
    f.add(app, "-o,--out", "run.out", "output directory");
    app->add_option("-c,--config", f.config, "configuration file");
    f.add(app, "--seed", "synth.seed", "random seed");
    f.add(app, "--threads", "run.threads", "worker threads");
}

void add_prior_flags(CLI::App* app, FlagSet& f) {
    f.add(app, "--damping", "prior.damping", "prior damping factor");
    f.add(app, "--prior-tolerance", "prior.tolerance", "prior convergence tolerance");
    f.add(app, "--max-sweeps", "prior.max_sweeps", "prior sweep budget");
}

void add_engine_flags(CLI::App* app, FlagSet& f) {
    f.add(app, "--outer-threshold", "engine.outer_threshold", "stop when max |delta tau| is below");
    f.add(app, "--outer-max", "engine.outer_max", "outer iteration cap");
    f.add(app, "--initial-trust", "engine.initial_trust", "source trust before the first iteration");
    f.add(app, "--bp-damping", "engine.bp_damping", "message damping");
    f.add(app, "--bp-tolerance", "engine.bp_tolerance", "message convergence tolerance");
    f.add(app, "--bp-max-rounds", "engine.bp_max_rounds", "message passing round cap");
    f.add(app, "--edge-threshold", "engine.edge_threshold", "minimum similarity for a pairwise edge");
    f.add(app, "--coupling", "engine.coupling", "pairwise coupling strength");
    f.add(app, "--false-pair-factor", "engine.false_pair_factor", "exponent factor for both-false pairs");
}

void add_synth_flags(CLI::App* app, FlagSet& f) {
    f.add(app, "--sources", "synth.n_sources", "number of sources");
    f.add(app, "--entities", "synth.n_entities", "number of entities");
    f.add(app, "--conflicts", "synth.n_conflicts", "number of conflicting entity/predicate pairs");
    f.add(app, "--attachment", "synth.attachment_m", "preferential attachment offset");
    f.add(app, "--reliability-low", "synth.reliability_low", "lowest source reliability");
    f.add(app, "--reliability-high", "synth.reliability_high", "highest source reliability");
    f.add(app, "--values-per-conflict", "synth.values_per_conflict", "candidate values per conflict");
    f.add(app, "--sameas-fidelity", "synth.sameas_fidelity", "probability a sameAs link points at the more reliable source");
    f.uniform_opt = app->add_flag("--uniform-support", f.uniform, "one supporter per candidate value");
}

void report_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << format_diagnostic(d) << '\n';
}


PreparedInput load_input(const RunConfig& cfg, std::ostream& err) {
    if (cfg.inputs.empty()) throw ConfigError("no input files given (use --input)");
    std::vector<Diagnostic> diags;
    Corpus corpus = load_corpus(cfg.inputs, cfg.strict ? ParseMode::Strict : ParseMode::Lenient, diags);
    PredicateAlignment alignment = cfg.alignment.empty() ? PredicateAlignment{} : PredicateAlignment::load(cfg.alignment);
    PreparedInput in = prepare(corpus, cfg.policy, alignment);
    report_diagnostics(diags, err);
    report_diagnostics(in.diagnostics, err);
    return in;
}

int cmd_resolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.prior.validate();
    cfg.engine.validate();
    PreparedInput in = load_input(cfg, err);
    if (in.sbg.empty()) err << "WARN source belief graph is empty; every source gets the neutral prior 0.5\n";
    PriorBeliefs priors = priors_or_neutral(in.sbg, cfg.prior);
    if (!in.sbg.empty() && !priors.converged) err << "WARN prior did not converge within the sweep budget\n";
    Resolution res = resolve_all(in.store, priors, cfg.engine);

    fs::path dir = cfg.out;
    write_atomic(dir / "decisions.jsonl", decisions_jsonl(in.store.conflict_sets(), res));
    write_atomic(dir / "trace.csv", trace_csv(res.trace.rows));
    write_atomic(dir / "source_trust.tsv", source_trust_tsv(res.state));

    out << "resolved " << res.decisions.size() << " conflict sets from " << in.store.claims().size() << " claims in "
        << res.state.iteration << " iterations" << (res.converged ? "" : " (not converged)") << '\n';
    if (!res.converged) {
        err << "WARN outer loop stopped at the iteration cap before reaching the threshold\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_prior(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.prior.validate();
    PreparedInput in = load_input(cfg, err);
    PriorBeliefs priors = compute_prior(in.sbg, cfg.prior);
    normalize_prior(priors);
    fs::path dir = cfg.out;
    write_atomic(dir / "prior.tsv", prior_tsv(priors));
    write_atomic(dir / "sbg.tsv", sbg_tsv(in.sbg));
    out << "ranked " << priors.br.size() << " sources after " << priors.sweeps_used << " sweeps"
        << (priors.converged ? "" : " (not converged)") << '\n';
    return priors.converged ? kExitOk : kExitNotConverged;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    SynthData data = generate(cfg.synth);
    fs::path dir = cfg.out;
    write_atomic(dir / "synthetic.nt", data.ntriples);
    write_atomic(dir / "gold.tsv", gold_to_tsv(data.gold));
    out << "generated " << data.gold.truth.size() << " conflicts over " << cfg.synth.n_sources << " sources\n";
    return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    CompareOptions options{cfg.engine, cfg.truthfinder, cfg.prior};
    cfg.prior.validate();
    cfg.engine.validate();
    fs::path dir = cfg.out;
    BatchReport batch;
    std::vector<std::string> traces;
    if (!cfg.inputs.empty()) {
        if (cfg.gold.empty()) throw ConfigError("evaluating input files needs --gold");
        PreparedInput in = load_input(cfg, err);
        GoldStandard gold = gold_from_tsv(read_file(cfg.gold));
        PriorBeliefs priors = priors_or_neutral(in.sbg, cfg.prior);
        batch.runs.push_back(compare(in.store, priors, gold, options));
        batch.runs.back().seed = cfg.synth.seed;
        traces.push_back("trace.csv");
    } else {
        if (cfg.seeds == 0) throw ConfigError("--seeds must be at least 1");
        std::vector<std::uint64_t> seeds;
        for (std::size_t i = 0; i < cfg.seeds; ++i) seeds.push_back(cfg.synth.seed + i);
        batch = run_batch(cfg.synth, seeds, options);
        for (auto s : seeds) traces.push_back("trace_seed" + std::to_string(s) + ".csv");
    }
    bool converged = true;
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const auto& td = batch.runs[i].method("truthdiscover");
        converged = converged && td.converged;
        write_atomic(dir / traces[i], trace_csv(td.trace));
    }
    write_atomic(dir / "report.json", report_json(batch, traces));
    out << report_table(batch);
    return converged ? kExitOk : kExitNotConverged;
}

int cmd_baseline(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    PreparedInput in = load_input(cfg, err);
    fs::path dir = cfg.out;
    const auto& sets = in.store.conflict_sets();
    int code = kExitOk;
    if (cfg.method == "vote" || cfg.method == "all") {
        write_atomic(dir / "decisions_vote.jsonl", baseline_jsonl(sets, vote_all(in.store), 1, true));
        out << "vote: " << sets.size() << " conflict sets\n";
    }
    if (cfg.method == "truthfinder" || cfg.method == "all") {
        TruthFinderResult tf = truthfinder(in.store, cfg.truthfinder);
        write_atomic(dir / "decisions_truthfinder.jsonl", baseline_jsonl(sets, tf.decisions, tf.iterations, tf.converged));
        out << "truthfinder: " << sets.size() << " conflict sets in " << tf.iterations << " iterations"
            << (tf.converged ? "" : " (not converged)") << '\n';
        if (!tf.converged) code = kExitNotConverged;
    }
    return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truth discovery over conflicting Linked Data claims", "truthdiscover"};
    app.require_subcommand(1);

    FlagSet resolve_f, prior_f, synth_f, eval_f, baseline_f;
    auto* resolve = app.add_subcommand("resolve", "resolve every conflict set of the input");
    add_common(resolve, resolve_f, true);
    add_prior_flags(resolve, resolve_f);
    add_engine_flags(resolve, resolve_f);

    auto* prior = app.add_subcommand("prior", "rank sources by their prior belief");
    add_common(prior, prior_f, true);
    add_prior_flags(prior, prior_f);

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with gold truth");
    add_common(synth, synth_f, false);
    add_synth_flags(synth, synth_f);

    auto* eval = app.add_subcommand("eval", "compare methods on synthetic or labelled data");
    add_common(eval, eval_f, true);
    add_prior_flags(eval, eval_f);
    add_engine_flags(eval, eval_f);
    add_synth_flags(eval, eval_f);
    eval_f.add(eval, "--seeds", "run.seeds", "number of consecutive seeds starting at --seed");
    eval_f.add(eval, "--gold", "run.gold", "gold TSV for --input data");

    auto* baseline = app.add_subcommand("baseline", "run the vote and TruthFinder baselines");
    add_common(baseline, baseline_f, true);
    baseline_f.add(baseline, "--method", "run.method", "vote, truthfinder or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitFatal;
    }

    try {
        if (resolve->parsed()) return cmd_resolve(resolve_f.resolve(), out, err);
        if (prior->parsed()) return cmd_prior(prior_f.resolve(), out, err);
        if (synth->parsed()) return cmd_synth(synth_f.resolve(), out, err);
        if (eval->parsed()) return cmd_eval(eval_f.resolve(), out, err);
        if (baseline->parsed()) return cmd_baseline(baseline_f.resolve(), out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        for (auto* sub : app.get_subcommands()) err << sub->help();
        return kExitFatal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFatal;
    }
    return kExitFatal;
}

}  // namespace truthdiscover
