#include "truthdiscover/evaluation.hpp"

#include <algorithm>
#include <chrono>

#include "truthdiscover/pipeline.hpp"

namespace truthdiscover {

namespace {

template <class F>
double timed(F&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

MissingDecision::MissingDecision(GoldKey key)
    : std::runtime_error("no decision for " + key.first.str() + " " + key.second.str()), key_(std::move(key)) {}

DecisionMap decision_map(const std::vector<TruthDecision>& decisions) {
    DecisionMap out;
    for (const auto& d : decisions) out.insert_or_assign(GoldKey{d.entity, d.predicate}, d.chosen);
    return out;
}

DecisionMap decision_map(const std::vector<BaselineDecision>& decisions) {
    DecisionMap out;
    for (const auto& d : decisions) out.insert_or_assign(GoldKey{d.entity, d.predicate}, d.chosen);
    return out;
}

double accuracy(const DecisionMap& decisions, const GoldStandard& gold) {
    if (gold.truth.empty()) return 1.0;
    std::size_t correct = 0;
    for (const auto& [key, value] : gold.truth) {
        auto it = decisions.find(key);
        if (it == decisions.end()) throw MissingDecision(key);
        if (it->second == value) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(gold.truth.size());
}

const MethodReport& ComparisonReport::method(std::string_view name) const {
    for (const auto& m : methods) {
        if (m.method == name) return m;
    }
    throw std::out_of_range("no report for method " + std::string(name));
}

ComparisonReport compare(const ClaimStore& store, const PriorBeliefs& priors, const GoldStandard& gold,
                         const CompareOptions& options) {
    ComparisonReport report;
    report.conflict_sets = store.conflict_sets().size();
    report.gold_keys = gold.truth.size();

    {
        MethodReport m;
        m.method = "truthdiscover";
        Resolution res;
        m.seconds = timed([&] { res = resolve_all(store, priors, options.engine); });
        m.accuracy = accuracy(decision_map(res.decisions), gold);
        m.iterations = res.state.iteration;
        m.converged = res.converged;
        m.trace = res.trace.rows;
        report.methods.push_back(std::move(m));
    }
    {
        MethodReport m;
        m.method = "vote";
        std::vector<BaselineDecision> decisions;
        m.seconds = timed([&] { decisions = vote_all(store); });
        m.accuracy = accuracy(decision_map(decisions), gold);
        m.iterations = 1;
        report.methods.push_back(std::move(m));
    }
    {
        MethodReport m;
        m.method = "truthfinder";
        TruthFinderResult tf;
        m.seconds = timed([&] { tf = truthfinder(store, options.truthfinder); });
        m.accuracy = accuracy(decision_map(tf.decisions), gold);
        m.iterations = tf.iterations;
        m.converged = tf.converged;
        report.methods.push_back(std::move(m));
    }
    return report;
}

ComparisonReport compare_synthetic(const SynthConfig& synth, const CompareOptions& options) {
    SynthData data = generate(synth);
    ParseResult parsed = parse_triples(data.ntriples, RdfFormat::NTriples, ParseMode::Strict, "synthetic");
    PreparedInput in = prepare(Corpus::single(std::move(parsed.statements), "synthetic"), SourcePolicy::Host);
    PriorBeliefs priors = priors_or_neutral(in.sbg, options.prior);
    ComparisonReport report = compare(in.store, priors, data.gold, options);
    report.seed = synth.seed;
    return report;
}

double BatchReport::mean_accuracy(std::string_view method) const {
    if (runs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : runs) sum += r.method(method).accuracy;
    return sum / static_cast<double>(runs.size());
}

std::size_t BatchReport::wins(std::string_view a, std::string_view b) const {
    return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [&](const ComparisonReport& r) {
        return r.method(a).accuracy > r.method(b).accuracy;
    }));
}

BatchReport run_batch(const SynthConfig& base, const std::vector<std::uint64_t>& seeds, const CompareOptions& options) {
    BatchReport batch;
    for (auto seed : seeds) {
        SynthConfig cfg = base;
        cfg.seed = seed;
        batch.runs.push_back(compare_synthetic(cfg, options));
    }
    return batch;
}

}  // namespace truthdiscover
