#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "truthdiscover/claims.hpp"
#include "truthdiscover/markov_field.hpp"
#include "truthdiscover/prior.hpp"
#include "truthdiscover/similarity.hpp"

namespace truthdiscover {

struct EngineConfig {
    double outer_threshold = 1e-3;  // stop when max |delta tau| falls below
    std::size_t outer_max = 20;
    double initial_trust = 0.5;  // t before the first iteration
    BpConfig bp;
    FieldParams field;
    SimilarityConfig similarity;
    unsigned threads = 1;
    bool snapshot_sources = false;  // keep t' per iteration in the trace

    void validate() const;
};

struct TraceRow {
    std::size_t iteration = 0;
    double mean_delta_tau = 0.0;
    double max_delta_tau = 0.0;
    std::size_t bp_unconverged = 0;  // fields whose BP hit its round cap
    std::vector<double> t_smoothed;  // indexed like TrustState::sources when snapshots are on
};

struct ConvergenceTrace {
    std::vector<TraceRow> rows;
};

/// Trust quantities after the last outer iteration.
///  - tau: BP marginals P(y = 1) per conflict set and object
///  - t: mean tau over each source's conflict-set claims (t0 if it has none)
///  - t_smoothed: (nbr + t) / 2
///  - tau_base: mean t_smoothed of each object's supporters, i.e. the unary
///    trust the next iteration would start from
struct TrustState {
    std::vector<SourceId> sources;  // sorted
    std::vector<double> nbr;
    std::vector<double> t;
    std::vector<double> t_smoothed;
    std::vector<std::vector<double>> tau;
    std::vector<std::vector<double>> tau_base;
    std::size_t iteration = 0;

    std::size_t source_index(const SourceId& id) const;
};

struct TruthDecision {
    EntityClusterId entity;
    PredicateId predicate;
    std::size_t chosen_index = 0;
    NormalizedValue chosen = NormalizedValue::number(0);
    std::vector<double> tau;
    std::vector<SourceId> support;
    bool bp_converged = true;
};

struct Resolution {
    std::vector<TruthDecision> decisions;  // one per conflict set, store order
    TrustState state;
    ConvergenceTrace trace;
    bool converged = false;
};

/// Arithmetic mean of `values`, or `fallback` when empty.
double mean_trust(std::span<const double> values, double fallback);

/// (nbr + t) / 2.
inline double smooth_trustworthiness(double nbr, double t) { return (nbr + t) / 2.0; }

/// Mean smoothed trust of each object's supporters.
std::vector<double> object_base_trust(const ConflictSet& set, const std::function<double(const SourceId&)>& t_smoothed);

/// Per-source t over conflict-set claims, in TrustState::sources order.
std::vector<double> source_trustworthiness(const ClaimStore& store, const std::vector<SourceId>& sources,
                                           const std::vector<std::vector<double>>& tau, double fallback);

/// One conflict-set inference: field from base trust and similarities, then
/// loopy BP. Returns marginals in object order.
BpResult infer_conflict_set(std::span<const double> base_trust, std::span<const PairSimilarity> pairs,
                            const EngineConfig& cfg);

/// Index of the winning object: highest score, then more supporters, then
/// higher summed supporter trust, then the canonically smallest value.
std::size_t select_truth(const ConflictSet& set, std::span<const double> score, std::span<const double> support_trust);

/// The full iterative procedure over every conflict set of the store.
Resolution resolve_all(const ClaimStore& store, const PriorBeliefs& priors, const EngineConfig& cfg = {});

}  // namespace truthdiscover
