#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "truthdiscover/ids.hpp"
#include "truthdiscover/value.hpp"

namespace truthdiscover {

struct SynthConfig {
    std::size_t n_sources = 50;
    std::size_t n_entities = 500;
    std::size_t n_conflicts = 2000;  // conflicting (entity, predicate) pairs
    std::size_t attachment_m = 2;
    double reliability_low = 0.3;
    double reliability_high = 0.95;
    std::size_t values_per_conflict = 3;
    double sameas_fidelity = 0.8;
    std::uint64_t seed = 42;
    /// Every candidate value gets exactly one supporter, so no object dominates.
    bool uniform_support = false;

    /// Throws std::invalid_argument for infeasible configurations.
    void validate() const;
};

using GoldKey = std::pair<EntityClusterId, PredicateId>;

struct GoldStandard {
    std::map<GoldKey, NormalizedValue> truth;
};

struct SynthData {
    std::string ntriples;
    GoldStandard gold;
    std::vector<double> reliability;             // per source index
    std::vector<std::size_t> conflict_claims;    // per source index
    std::vector<std::string> source_hosts;       // per source index
};

/// Seed-deterministic corpus with a known truth per conflict.
///
/// Sources arrive over the sequence of conflicts on a square-root schedule;
/// the first few exist from the start. Each new source is placed in the next
/// attachment_m conflicts, after which providers are drawn with probability
/// proportional to (claims so far + attachment_m). This leaves a handful of
/// heavy sources and many sources with a few claims.
///
/// A provider asserts the gold value with probability equal to its
/// reliability, otherwise one of values_per_conflict - 1 perturbations of it.
/// Each entity's IRIs are chained by owl:sameAs; an edge points at the more
/// reliable endpoint with probability sameas_fidelity.
SynthData generate(const SynthConfig& cfg);

/// TSV `entity TAB predicate TAB kind:value`.
std::string gold_to_tsv(const GoldStandard& gold);
GoldStandard gold_from_tsv(std::string_view tsv);

}  // namespace truthdiscover
