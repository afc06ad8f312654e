#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>

#include "truthdiscover/graph.hpp"
#include "truthdiscover/ids.hpp"

namespace truthdiscover {

struct PriorConfig {
    double damping = 0.85;
    double tolerance = 1e-9;  // L-infinity change per sweep
    std::size_t max_sweeps = 200;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct PriorBeliefs {
    std::map<SourceId, double> br;
    std::map<SourceId, double> nbr;
    std::size_t sweeps_used = 0;
    double residual = 0.0;
    bool converged = false;
};

class EmptyGraph : public std::runtime_error {
public:
    EmptyGraph() : std::runtime_error("source belief graph is empty") {}
};

/// Synchronous sweeps of
///   BR(w) = (1 - d) + d * sum_{l in B(w)} BR(l) * L(l, w) / C(l)
/// from BR = 1 until the L-infinity change drops below the tolerance or the
/// sweep budget runs out (converged = false; the last iterate is returned).
/// There is no 1/N scaling and sources without out-edges pass nothing on.
PriorBeliefs compute_prior(const SourceBeliefGraph& sbg, const PriorConfig& cfg = {});

/// Min-max normalization of br into nbr; a constant br maps to 0.5.
void normalize_prior(PriorBeliefs& beliefs);

/// L-infinity distance between br and the right-hand side of the recurrence
/// evaluated at br.
double prior_residual(const SourceBeliefGraph& sbg, const std::map<SourceId, double>& br, double damping);

}  // namespace truthdiscover
