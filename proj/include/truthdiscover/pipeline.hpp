#pragma once

#include <optional>
#include <string>
#include <vector>

#include "truthdiscover/claims.hpp"
#include "truthdiscover/corpus.hpp"
#include "truthdiscover/graph.hpp"
#include "truthdiscover/prior.hpp"
#include "truthdiscover/source.hpp"

namespace truthdiscover {

/// Everything derived from a corpus before truth discovery runs.
struct PreparedInput {
    SameAsGraph sameas;
    EntityClusterMap clusters;
    SourceBeliefGraph sbg;
    ProjectionStats projection;
    ClaimStore store;
    std::vector<Diagnostic> diagnostics;
};

PreparedInput prepare(const Corpus& corpus, SourcePolicy policy, const PredicateAlignment& alignment = {});

/// Priors for a prepared input. An empty SBG yields no ranking, so every
/// source then gets the neutral NBR of 0.5.
PriorBeliefs priors_or_neutral(const SourceBeliefGraph& sbg, const PriorConfig& cfg);

/// Parses each path in order into one corpus. Lenient diagnostics are
/// appended to `diagnostics`.
Corpus load_corpus(const std::vector<std::string>& paths, ParseMode mode, std::vector<Diagnostic>& diagnostics);

}  // namespace truthdiscover
