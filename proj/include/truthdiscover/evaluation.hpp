#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "truthdiscover/baselines.hpp"
#include "truthdiscover/engine.hpp"
#include "truthdiscover/prior.hpp"
#include "truthdiscover/synth.hpp"

namespace truthdiscover {

class MissingDecision : public std::runtime_error {
public:
    explicit MissingDecision(GoldKey key);
    const GoldKey& key() const noexcept { return key_; }

private:
    GoldKey key_;
};

using DecisionMap = std::map<GoldKey, NormalizedValue>;

DecisionMap decision_map(const std::vector<TruthDecision>& decisions);
DecisionMap decision_map(const std::vector<BaselineDecision>& decisions);

/// Fraction of gold keys whose decision equals the gold value. Throws
/// MissingDecision for the first gold key without a decision. An empty gold
/// standard scores 1.
double accuracy(const DecisionMap& decisions, const GoldStandard& gold);

struct MethodReport {
    std::string method;
    double accuracy = 0.0;
    double seconds = 0.0;
    std::size_t iterations = 0;
    bool converged = true;
    std::vector<TraceRow> trace;  // only filled for truthdiscover
};

struct ComparisonReport {
    std::uint64_t seed = 0;
    std::size_t conflict_sets = 0;
    std::size_t gold_keys = 0;
    std::vector<MethodReport> methods;  // truthdiscover, vote, truthfinder

    const MethodReport& method(std::string_view name) const;
};

struct CompareOptions {
    EngineConfig engine;
    TruthFinderConfig truthfinder;
    PriorConfig prior;
};

/// Runs every method on the same store, sequentially.
ComparisonReport compare(const ClaimStore& store, const PriorBeliefs& priors, const GoldStandard& gold,
                         const CompareOptions& options = {});

/// Generates, ingests and compares one synthetic dataset.
ComparisonReport compare_synthetic(const SynthConfig& synth, const CompareOptions& options = {});

struct BatchReport {
    std::vector<ComparisonReport> runs;

    double mean_accuracy(std::string_view method) const;
    /// Seeds on which `a` scored strictly higher than `b`.
    std::size_t wins(std::string_view a, std::string_view b) const;
};

/// One synthetic comparison per seed, each with `base` apart from the seed.
BatchReport run_batch(const SynthConfig& base, const std::vector<std::uint64_t>& seeds,
                      const CompareOptions& options = {});

}  // namespace truthdiscover
