#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "truthdiscover/corpus.hpp"
#include "truthdiscover/ids.hpp"
#include "truthdiscover/source.hpp"

namespace truthdiscover {

/// Directed graph of owl:sameAs statements. Vertices are kept sorted; edges
/// reference them by index and keep one entry per statement, so duplicated
/// statements give parallel edges.
class SameAsGraph {
public:
    struct Edge {
        std::uint32_t from;
        std::uint32_t to;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    SameAsGraph() = default;
    /// Builds from explicit IRI pairs, mostly for tests.
    explicit SameAsGraph(std::span<const std::pair<std::string, std::string>> edges);

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    bool empty() const noexcept { return vertices_.empty(); }

    /// Index of `iri`, or vertices().size() when absent.
    std::size_t index_of(std::string_view iri) const noexcept;
    const std::string& from_iri(const Edge& e) const { return vertices_[e.from]; }
    const std::string& to_iri(const Edge& e) const { return vertices_[e.to]; }
    /// Corpus statement index an edge came from (npos for hand-built graphs).
    std::size_t statement_of(std::size_t edge) const noexcept {
        return edge < statement_.size() ? statement_[edge] : static_cast<std::size_t>(-1);
    }

private:
    friend SameAsGraph build_sameas_graph(const Corpus& corpus, std::vector<Diagnostic>* diagnostics);
    void assign(std::span<const std::pair<std::string_view, std::string_view>> edges);

    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> statement_;
};

/// Includes exactly the statements whose predicate is owl:sameAs and whose
/// object is an IRI. sameAs statements with other objects are reported.
SameAsGraph build_sameas_graph(const Corpus& corpus, std::vector<Diagnostic>* diagnostics = nullptr);

/// Connected components of the undirected view of a SameAsGraph. Each
/// cluster is named after its lexicographically smallest member.
class EntityClusterMap {
public:
    EntityClusterMap() = default;

    /// The cluster of `iri`; IRIs outside the graph form singleton clusters.
    EntityClusterId cluster_of(std::string_view iri) const;
    std::vector<std::string> members(const EntityClusterId& id) const;
    /// Number of connected components of the graph.
    std::size_t cluster_count() const noexcept { return cluster_count_; }

private:
    friend EntityClusterMap sameas_closure(const SameAsGraph& graph);

    std::vector<std::string> vertices_;    // sorted
    std::vector<std::uint32_t> root_;      // smallest member index per vertex
    std::size_t cluster_count_ = 0;
};

EntityClusterMap sameas_closure(const SameAsGraph& graph);

/// Directed multigraph between sources. Self-loops are never stored.
class SourceBeliefGraph {
public:
    /// Returns false (and stores nothing) for self-loops.
    bool add_edge(const SourceId& from, const SourceId& to, std::size_t count = 1);
    void add_vertex(const SourceId& id) { vertices_.insert(id); }

    const std::set<SourceId>& vertices() const noexcept { return vertices_; }
    const std::map<std::pair<SourceId, SourceId>, std::size_t>& edges() const noexcept { return multiplicity_; }
    bool empty() const noexcept { return vertices_.empty(); }

    /// C(w): total outgoing multiplicity.
    std::size_t out_degree(const SourceId& id) const;
    /// L(from, to).
    std::size_t multiplicity(const SourceId& from, const SourceId& to) const;
    /// B(w): sources with at least one edge into `id`.
    std::set<SourceId> in_neighbors(const SourceId& id) const;
    std::size_t total_multiplicity() const noexcept { return total_; }

private:
    std::set<SourceId> vertices_;
    std::map<std::pair<SourceId, SourceId>, std::size_t> multiplicity_;
    std::map<SourceId, std::size_t> out_degree_;
    std::map<SourceId, std::set<SourceId>> in_neighbors_;
    std::size_t total_ = 0;
};

struct ProjectionStats {
    std::size_t retained = 0;
    std::size_t self_loops = 0;
    std::size_t no_source = 0;
};

/// Maps each sameAs edge (u, v) to (source(u), source(v)). Edges with an
/// endpoint whose source cannot be resolved are dropped and reported.
/// `corpus` is only used to label diagnostics.
SourceBeliefGraph project_to_sbg(const SameAsGraph& graph, const SourceResolver& resolver,
                                 ProjectionStats* stats = nullptr, std::vector<Diagnostic>* diagnostics = nullptr,
                                 const Corpus* corpus = nullptr);
SourceBeliefGraph project_to_sbg(const SameAsGraph& graph, SourcePolicy policy, ProjectionStats* stats = nullptr);

}  // namespace truthdiscover
