#include "truthdiscover/graph.hpp"

#include <algorithm>
#include <numeric>

namespace truthdiscover {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // The smaller index always becomes the root, so roots are the smallest members.
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::uint32_t> parent_;
};

}  // namespace

SameAsGraph::SameAsGraph(std::span<const std::pair<std::string, std::string>> edges) {
    std::vector<std::pair<std::string_view, std::string_view>> views;
    views.reserve(edges.size());
    for (const auto& [a, b] : edges) views.emplace_back(a, b);
    assign(views);
}

void SameAsGraph::assign(std::span<const std::pair<std::string_view, std::string_view>> edges) {
    vertices_.clear();
    edges_.clear();
    vertices_.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        vertices_.emplace_back(a);
        vertices_.emplace_back(b);
    }
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    edges_.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        edges_.push_back({static_cast<std::uint32_t>(index_of(a)), static_cast<std::uint32_t>(index_of(b))});
    }
}

std::size_t SameAsGraph::index_of(std::string_view iri) const noexcept {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), iri);
    if (it == vertices_.end() || *it != iri) return vertices_.size();
    return static_cast<std::size_t>(it - vertices_.begin());
}

SameAsGraph build_sameas_graph(const Corpus& corpus, std::vector<Diagnostic>* diagnostics) {
    std::vector<std::pair<std::string_view, std::string_view>> pairs;
    std::vector<std::size_t> statements;
    for (std::size_t i = 0; i < corpus.statements.size(); ++i) {
        const auto& st = corpus.statements[i];
        if (st.predicate != kOwlSameAs) continue;
        if (!st.object.is_iri()) {
            if (diagnostics) {
                diagnostics->push_back({std::string(corpus.file_of(i)), st.line, "owl:sameAs object is not an IRI"});
            }
            continue;
        }
        pairs.emplace_back(st.subject, st.object.value);
        statements.push_back(i);
    }
    SameAsGraph g;
    g.assign(pairs);
    g.statement_ = std::move(statements);
    return g;
}

EntityClusterId EntityClusterMap::cluster_of(std::string_view iri) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), iri);
    if (it == vertices_.end() || *it != iri) return EntityClusterId(std::string(iri));
    return EntityClusterId(vertices_[root_[static_cast<std::size_t>(it - vertices_.begin())]]);
}

std::vector<std::string> EntityClusterMap::members(const EntityClusterId& id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id.str());
    if (it == vertices_.end() || *it != id.str()) return {id.str()};
    auto root = root_[static_cast<std::size_t>(it - vertices_.begin())];
    std::vector<std::string> out;
    for (std::size_t i = root; i < vertices_.size(); ++i) {
        if (root_[i] == root) out.push_back(vertices_[i]);
    }
    return out;
}

EntityClusterMap sameas_closure(const SameAsGraph& graph) {
    DisjointSets sets(graph.vertices().size());
    for (const auto& e : graph.edges()) sets.unite(e.from, e.to);
    EntityClusterMap map;
    map.vertices_ = graph.vertices();
    map.root_.resize(map.vertices_.size());
    for (std::uint32_t i = 0; i < map.root_.size(); ++i) {
        map.root_[i] = sets.find(i);
        if (map.root_[i] == i) ++map.cluster_count_;
    }
    return map;
}

bool SourceBeliefGraph::add_edge(const SourceId& from, const SourceId& to, std::size_t count) {
    if (from == to || count == 0) return false;
    vertices_.insert(from);
    vertices_.insert(to);
    multiplicity_[{from, to}] += count;
    out_degree_[from] += count;
    in_neighbors_[to].insert(from);
    total_ += count;
    return true;
}

std::size_t SourceBeliefGraph::out_degree(const SourceId& id) const {
    auto it = out_degree_.find(id);
    return it == out_degree_.end() ? 0 : it->second;
}

std::size_t SourceBeliefGraph::multiplicity(const SourceId& from, const SourceId& to) const {
    auto it = multiplicity_.find({from, to});
    return it == multiplicity_.end() ? 0 : it->second;
}

std::set<SourceId> SourceBeliefGraph::in_neighbors(const SourceId& id) const {
    auto it = in_neighbors_.find(id);
    return it == in_neighbors_.end() ? std::set<SourceId>{} : it->second;
}

SourceBeliefGraph project_to_sbg(const SameAsGraph& graph, const SourceResolver& resolver, ProjectionStats* stats,
                                 std::vector<Diagnostic>* diagnostics, const Corpus* corpus) {
    // Sources are resolved once per vertex.
    std::vector<std::optional<SourceId>> source(graph.vertices().size());
    for (std::size_t i = 0; i < source.size(); ++i) source[i] = resolver.vertex_source(graph.vertices()[i]);

    ProjectionStats local;
    SourceBeliefGraph sbg;
    const auto& edges = graph.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        const auto& from = source[e.from];
        const auto& to = source[e.to];
        if (!from || !to) {
            ++local.no_source;
            if (diagnostics) {
                std::size_t st = graph.statement_of(k);
                bool known = corpus != nullptr && st < corpus->statements.size();
                diagnostics->push_back({known ? std::string(corpus->file_of(st)) : std::string("<sameas>"),
                                        known ? corpus->statements[st].line : 0,
                                        "no source for sameAs endpoint " + (from ? graph.to_iri(e) : graph.from_iri(e))});
            }
            continue;
        }
        if (sbg.add_edge(*from, *to)) {
            ++local.retained;
        } else {
            ++local.self_loops;
        }
    }
    if (stats) *stats = local;
    return sbg;
}

SourceBeliefGraph project_to_sbg(const SameAsGraph& graph, SourcePolicy policy, ProjectionStats* stats) {
    return project_to_sbg(graph, SourceResolver(policy), stats);
}

}  // namespace truthdiscover
