#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "truthdiscover/ids.hpp"
#include "truthdiscover/rdf.hpp"

namespace truthdiscover {

enum class SourcePolicy { Host, PayLevelDomain, NamedGraph };

/// Accepts "host", "pld" / "pay_level_domain", "graph" / "named_graph".
std::optional<SourcePolicy> parse_source_policy(std::string_view s) noexcept;
std::string_view policy_name(SourcePolicy p) noexcept;

class NoAuthority : public std::runtime_error {
public:
    explicit NoAuthority(const std::string& iri) : std::runtime_error("no authority in IRI " + iri) {}
};

/// Lower-cased host of an absolute IRI (userinfo and port removed), or
/// nullopt when the IRI has no authority component.
std::optional<std::string> iri_host(std::string_view iri);

/// Registrable domain of a host under the built-in public-suffix snapshot:
/// the public suffix plus one label. IP literals and single-label hosts are
/// returned unchanged.
std::string pay_level_domain(std::string_view host);

/// Maps a subject IRI (host / pld policies) or a graph IRI (named_graph
/// policy) to the source that published it. Throws NoAuthority.
SourceId extract_source(std::string_view iri, SourcePolicy policy);

std::optional<SourceId> try_extract_source(std::string_view iri, SourcePolicy policy) noexcept;

/// Resolves the source of sameAs vertices and claim statements under one
/// policy. Under the named_graph policy a vertex belongs to the smallest
/// graph IRI in which it occurs as a subject, so the resolver must observe
/// the corpus first.
class SourceResolver {
public:
    explicit SourceResolver(SourcePolicy policy) : policy_(policy) {}

    SourcePolicy policy() const noexcept { return policy_; }

    void observe(const RdfStatement& st);

    std::optional<SourceId> vertex_source(std::string_view iri) const;
    std::optional<SourceId> statement_source(const RdfStatement& st) const;

private:
    SourcePolicy policy_;
    std::map<std::string, std::string, std::less<>> subject_graph_;
};

}  // namespace truthdiscover
