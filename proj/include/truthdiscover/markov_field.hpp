#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "truthdiscover/claims.hpp"
#include "truthdiscover/similarity.hpp"

namespace truthdiscover {

/// 2x2 table indexed [label of first node][label of second node].
using PairTable = std::array<std::array<double, 2>, 2>;

/// Pairwise Markov random field over binary labels y_i in {0, 1}. Cliques
/// are the unary singletons and the stored edges; the joint is
/// P(y) = (1/Z) prod_i phi_i(y_i) prod_(i,j) psi_ij(y_i, y_j).
class MarkovField {
public:
    struct Edge {
        std::size_t i;  // i < j
        std::size_t j;
        PairTable psi;  // psi[y_i][y_j]
    };

    explicit MarkovField(std::size_t nodes) : unary_(nodes, {1.0, 1.0}) {}

    std::size_t size() const noexcept { return unary_.size(); }
    const std::array<double, 2>& unary(std::size_t i) const { return unary_[i]; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Potentials must be strictly positive; throws std::invalid_argument.
    void set_unary(std::size_t i, double phi0, double phi1);
    /// Stores psi for (i, j); given i > j the table is transposed so that
    /// psi_ij(a, b) = psi_ji(b, a).
    void add_edge(std::size_t i, std::size_t j, const PairTable& psi);

    /// psi for the stored edge evaluated at the labels of nodes i and j.
    double pairwise(const Edge& e, int label_i, int label_j) const { return e.psi[label_i][label_j]; }

    /// True when the edge set has no cycle.
    bool is_forest() const;

private:
    std::vector<std::array<double, 2>> unary_;
    std::vector<Edge> edges_;
};

struct BpConfig {
    double damping = 0.3;  // new = (1 - damping) * computed + damping * old
    double tolerance = 1e-6;
    std::size_t max_rounds = 100;

    void validate() const;
};

struct BpResult {
    std::vector<std::array<double, 2>> marginals;  // [P(y_i = 0), P(y_i = 1)]
    std::size_t rounds = 0;
    double max_change = 0.0;
    bool converged = true;

    double p_true(std::size_t i) const { return marginals[i][1]; }
};

/// Sum-product loopy belief propagation with a synchronous flooding
/// schedule. Messages start uniform, are normalized and damped after each
/// round. Exact on forests once converged.
BpResult loopy_bp(const MarkovField& field, const BpConfig& cfg = {});

struct FieldParams {
    double edge_threshold = 0.1;  // minimum similarity for a pairwise edge
    double coupling = 1.0;
    double false_pair_factor = -0.5;
    double clamp = 1e-6;

    void validate() const;
};

struct PairSimilarity {
    std::size_t i;
    std::size_t j;
    double s;
};

/// Similarities of all object pairs (i < j) of a conflict set.
std::vector<PairSimilarity> pair_similarities(const ConflictSet& set, const SimilarityConfig& cfg = {});

/// Unary phi_i = (1 - tau_i, tau_i) with tau clamped to [clamp, 1 - clamp];
/// one edge per pair with s >= threshold, carrying
///   psi(1,1) = exp(c s), psi(0,0) = exp(c s rho), psi(0,1) = psi(1,0) = exp(-c s).
MarkovField build_field(std::span<const double> base_trust, std::span<const PairSimilarity> pairs,
                        const FieldParams& params = {});

}  // namespace truthdiscover
