#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "truthdiscover/claims.hpp"
#include "truthdiscover/similarity.hpp"

namespace truthdiscover {

enum class BaselineMethod { Vote, TruthFinder };

std::string_view method_name(BaselineMethod m) noexcept;

struct BaselineDecision {
    EntityClusterId entity;
    PredicateId predicate;
    std::size_t chosen_index = 0;
    NormalizedValue chosen = NormalizedValue::number(0);
    BaselineMethod method = BaselineMethod::Vote;
    std::vector<double> scores;  // per object: support count for vote, confidence for TruthFinder
};

/// Majority vote: the object with the most supporting sources. Ties fall
/// back to the canonically smallest value.
BaselineDecision vote(const ConflictSet& set);
std::vector<BaselineDecision> vote_all(const ClaimStore& store);

struct TruthFinderConfig {
    double dampening = 0.3;      // gamma in the logistic confidence
    double implication = 0.5;    // weight of neighbouring objects' scores
    double base_similarity = 0.5;  // implication(o' -> o) = sim(o', o) - base
    double initial_trust = 0.9;
    double tolerance = 1e-4;     // max |delta t| across sources
    std::size_t max_iterations = 50;
    SimilarityConfig similarity;
};

struct TruthFinderResult {
    std::vector<BaselineDecision> decisions;
    std::vector<SourceId> sources;
    std::vector<double> trust;  // final t per source
    std::size_t iterations = 0;
    bool converged = false;
    /// Smallest and largest trust seen across all iterations.
    double min_trust_seen = 1.0;
    double max_trust_seen = 0.0;
};

/// TruthFinder-style iteration over conflict sets:
///   tau(w)   = -ln(1 - t(w))
///   sigma(o) = sum of tau(w) over supporters     (so 1 - e^-sigma = 1 - prod(1 - t))
///   sigma*(o) = sigma(o) + implication * sum_{o' != o} sigma(o') (sim(o', o) - base)
///   s(o)     = 1 / (1 + exp(-dampening * sigma*(o)))
///   t(w)     = mean s(o) over the source's conflict-set claims
TruthFinderResult truthfinder(const ClaimStore& store, const TruthFinderConfig& cfg = {});

}  // namespace truthdiscover
