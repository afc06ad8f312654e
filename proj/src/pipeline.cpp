#include "truthdiscover/pipeline.hpp"

namespace truthdiscover {

PreparedInput prepare(const Corpus& corpus, SourcePolicy policy, const PredicateAlignment& alignment) {
    PreparedInput in;
    SourceResolver resolver(policy);
    if (policy == SourcePolicy::NamedGraph) {
        for (const auto& st : corpus.statements) resolver.observe(st);
    }
    in.sameas = build_sameas_graph(corpus, &in.diagnostics);
    in.clusters = sameas_closure(in.sameas);
    in.sbg = project_to_sbg(in.sameas, resolver, &in.projection, &in.diagnostics, &corpus);
    in.store = build_claims(corpus, in.clusters, alignment, resolver);
    in.diagnostics.insert(in.diagnostics.end(), in.store.diagnostics().begin(), in.store.diagnostics().end());
    return in;
}

PriorBeliefs priors_or_neutral(const SourceBeliefGraph& sbg, const PriorConfig& cfg) {
    if (sbg.empty()) return {};
    PriorBeliefs beliefs = compute_prior(sbg, cfg);
    normalize_prior(beliefs);
    return beliefs;
}

Corpus load_corpus(const std::vector<std::string>& paths, ParseMode mode, std::vector<Diagnostic>& diagnostics) {
    Corpus corpus;
    for (const auto& path : paths) {
        ParseResult r = parse_file(path, mode);
        diagnostics.insert(diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
        corpus.append(path, std::move(r.statements));
    }
    return corpus;
}

}  // namespace truthdiscover
