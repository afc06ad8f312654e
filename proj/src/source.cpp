#include "truthdiscover/source.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "truthdiscover/rdf.hpp"

namespace truthdiscover {

namespace {

// Snapshot of multi-label public suffixes commonly seen in Linked Data hosts.
// Any other host falls back to the single-label TLD rule.
const std::set<std::string, std::less<>>& multi_label_suffixes() {
    static const std::set<std::string, std::less<>> kSuffixes = {
        "ac.at", "co.at", "or.at", "gv.at",
        "com.au", "net.au", "org.au", "edu.au", "gov.au", "asn.au", "id.au",
        "com.br", "net.br", "org.br", "gov.br", "edu.br",
        "gc.ca", "qc.ca", "on.ca", "bc.ca",
        "com.cn", "net.cn", "org.cn", "gov.cn", "edu.cn", "ac.cn",
        "co.il", "org.il", "ac.il", "gov.il",
        "co.in", "net.in", "org.in", "ac.in", "gov.in", "res.in",
        "co.jp", "ne.jp", "or.jp", "ac.jp", "go.jp", "ad.jp", "ed.jp", "gr.jp", "lg.jp",
        "co.kr", "ne.kr", "or.kr", "ac.kr", "go.kr", "re.kr",
        "com.mx", "org.mx", "gob.mx", "edu.mx",
        "co.nz", "net.nz", "org.nz", "ac.nz", "govt.nz",
        "com.pl", "net.pl", "org.pl", "edu.pl", "gov.pl",
        "com.ru", "net.ru", "org.ru",
        "com.sg", "edu.sg", "gov.sg", "org.sg",
        "com.tr", "org.tr", "edu.tr", "gov.tr",
        "com.tw", "org.tw", "edu.tw", "gov.tw",
        "co.uk", "org.uk", "ac.uk", "gov.uk", "ltd.uk", "plc.uk", "me.uk", "net.uk", "nhs.uk", "police.uk",
        "com.ua", "org.ua", "gov.ua", "edu.ua",
        "co.za", "org.za", "ac.za", "gov.za",
        "github.io", "gitlab.io", "herokuapp.com", "appspot.com", "blogspot.com", "cloudfront.net",
        "s3.amazonaws.com",
    };
    return kSuffixes;
}

bool is_ip_literal(std::string_view host) {
    if (!host.empty() && host.front() == '[') return true;
    return std::all_of(host.begin(), host.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; });
}

}  // namespace

std::optional<SourcePolicy> parse_source_policy(std::string_view s) noexcept {
    if (s == "host") return SourcePolicy::Host;
    if (s == "pld" || s == "pay_level_domain") return SourcePolicy::PayLevelDomain;
    if (s == "graph" || s == "named_graph") return SourcePolicy::NamedGraph;
    return std::nullopt;
}

std::string_view policy_name(SourcePolicy p) noexcept {
    switch (p) {
        case SourcePolicy::Host: return "host";
        case SourcePolicy::PayLevelDomain: return "pld";
        case SourcePolicy::NamedGraph: return "graph";
    }
    return "host";
}

std::optional<std::string> iri_host(std::string_view iri) {
    auto colon = iri.find(':');
    if (colon == std::string_view::npos || !is_absolute_iri(iri)) return std::nullopt;
    std::string_view rest = iri.substr(colon + 1);
    if (!rest.starts_with("//")) return std::nullopt;
    rest.remove_prefix(2);
    std::string_view authority = rest.substr(0, rest.find_first_of("/?#"));
    if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
    std::string_view host = authority;
    if (!host.empty() && host.front() == '[') {
        auto close = host.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        host = host.substr(0, close + 1);
    } else if (auto port = host.rfind(':'); port != std::string_view::npos) {
        host = host.substr(0, port);
    }
    while (!host.empty() && host.back() == '.') host.remove_suffix(1);
    if (host.empty()) return std::nullopt;
    std::string out(host);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string pay_level_domain(std::string_view host) {
    if (is_ip_literal(host)) return std::string(host);
    const auto& suffixes = multi_label_suffixes();
    // Walk suffixes from the longest; the first public one determines the cut.
    std::size_t pos = 0;
    std::size_t prev_label = std::string_view::npos;
    while (true) {
        std::string_view candidate = host.substr(pos);
        if (suffixes.contains(candidate)) {
            if (prev_label == std::string_view::npos) return std::string(host);
            return std::string(host.substr(prev_label));
        }
        auto dot = host.find('.', pos);
        if (dot == std::string_view::npos) break;
        prev_label = pos;
        pos = dot + 1;
    }
    // Single-label public suffix (the TLD): keep the last two labels.
    auto last = host.rfind('.');
    if (last == std::string_view::npos || last == 0) return std::string(host);
    auto second = host.rfind('.', last - 1);
    if (second == std::string_view::npos) return std::string(host);
    return std::string(host.substr(second + 1));
}

SourceId extract_source(std::string_view iri, SourcePolicy policy) {
    if (policy == SourcePolicy::NamedGraph) {
        if (!is_absolute_iri(iri)) throw NoAuthority(std::string(iri));
        return SourceId(std::string(iri));
    }
    auto host = iri_host(iri);
    if (!host) throw NoAuthority(std::string(iri));
    if (policy == SourcePolicy::PayLevelDomain) return SourceId(pay_level_domain(*host));
    return SourceId(std::move(*host));
}

std::optional<SourceId> try_extract_source(std::string_view iri, SourcePolicy policy) noexcept {
    try {
        return extract_source(iri, policy);
    } catch (...) {
        return std::nullopt;
    }
}

void SourceResolver::observe(const RdfStatement& st) {
    if (policy_ != SourcePolicy::NamedGraph || !st.graph || st.graph->starts_with("_:")) return;
    auto it = subject_graph_.find(st.subject);
    if (it == subject_graph_.end()) {
        subject_graph_.emplace(st.subject, *st.graph);
    } else if (*st.graph < it->second) {
        it->second = *st.graph;
    }
}

std::optional<SourceId> SourceResolver::vertex_source(std::string_view iri) const {
    if (policy_ != SourcePolicy::NamedGraph) return try_extract_source(iri, policy_);
    auto it = subject_graph_.find(iri);
    if (it == subject_graph_.end()) return std::nullopt;
    return SourceId(it->second);
}

std::optional<SourceId> SourceResolver::statement_source(const RdfStatement& st) const {
    if (policy_ != SourcePolicy::NamedGraph) return try_extract_source(st.subject, policy_);
    if (!st.graph) return std::nullopt;
    return try_extract_source(*st.graph, policy_);
}

}  // namespace truthdiscover
