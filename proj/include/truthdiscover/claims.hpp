#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "truthdiscover/corpus.hpp"
#include "truthdiscover/graph.hpp"
#include "truthdiscover/ids.hpp"
#include "truthdiscover/source.hpp"
#include "truthdiscover/value.hpp"

namespace truthdiscover {

struct Claim {
    EntityClusterId entity;
    PredicateId predicate;
    NormalizedValue value;
    SourceId source;

    friend bool operator==(const Claim&, const Claim&) = default;
    friend bool operator<(const Claim& a, const Claim& b);
};

struct ConflictObject {
    NormalizedValue value;
    std::vector<SourceId> sources;  // sorted, non-empty
};

/// Distinct values asserted for one (entity, predicate), in canonical value
/// order. Only built when there are at least two.
struct ConflictSet {
    EntityClusterId entity;
    PredicateId predicate;
    std::vector<ConflictObject> objects;
};

/// Maps source predicate IRIs to canonical predicate ids; unmapped
/// predicates keep their IRI.
class PredicateAlignment {
public:
    PredicateAlignment() = default;

    /// TSV: `source-predicate-iri TAB canonical-id`, `#` comments, blank
    /// lines ignored. Throws std::runtime_error on malformed rows.
    static PredicateAlignment parse(std::string_view tsv);
    static PredicateAlignment load(const std::string& path);

    void add(std::string iri, std::string canonical) { map_[std::move(iri)] = std::move(canonical); }
    PredicateId map(std::string_view iri) const;
    std::size_t size() const noexcept { return map_.size(); }

private:
    std::map<std::string, std::string, std::less<>> map_;
};

/// Why statements did not become claims. Every statement is counted in
/// exactly one bucket.
struct ClaimStats {
    std::size_t statements = 0;
    std::size_t claims = 0;
    std::size_t duplicates = 0;
    std::size_t sameas = 0;
    std::size_t null_object = 0;
    std::size_t blank_object = 0;
    std::size_t no_source = 0;

    std::size_t accounted() const noexcept {
        return claims + duplicates + sameas + null_object + blank_object + no_source;
    }
};

class ClaimStore {
public:
    ClaimStore() = default;
    /// Deduplicates and indexes an arbitrary claim list.
    static ClaimStore from_claims(std::vector<Claim> claims);

    /// Sorted by (entity, predicate, value, source), without duplicates.
    const std::vector<Claim>& claims() const noexcept { return claims_; }
    /// Sorted by (entity, predicate).
    const std::vector<ConflictSet>& conflict_sets() const noexcept { return conflict_sets_; }
    /// F(w): indices into claims() of every claim made by a source.
    const std::map<SourceId, std::vector<std::size_t>>& sources() const noexcept { return sources_; }

    const ClaimStats& stats() const noexcept { return stats_; }
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

    /// Index of the conflict set a claim belongs to, or npos when its
    /// (entity, predicate) has a single distinct value.
    std::size_t conflict_set_of(std::size_t claim) const noexcept { return claim_set_[claim]; }

private:
    friend ClaimStore build_claims(const Corpus&, const EntityClusterMap&, const PredicateAlignment&,
                                   const SourceResolver&);
    void index();

    std::vector<Claim> claims_;
    std::vector<ConflictSet> conflict_sets_;
    std::map<SourceId, std::vector<std::size_t>> sources_;
    std::vector<std::size_t> claim_set_;
    ClaimStats stats_;
    std::vector<Diagnostic> diagnostics_;
};

/// One claim per non-sameAs statement with a usable object and source.
/// Subjects and IRI objects are replaced by their entity cluster so that
/// co-referent IRIs agree.
ClaimStore build_claims(const Corpus& corpus, const EntityClusterMap& clusters, const PredicateAlignment& alignment,
                        const SourceResolver& resolver);

}  // namespace truthdiscover
