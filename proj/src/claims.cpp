#include "truthdiscover/claims.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace truthdiscover {

bool operator<(const Claim& a, const Claim& b) {
    if (a.entity != b.entity) return a.entity < b.entity;
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    if (!(a.value == b.value)) return a.value < b.value;
    return a.source < b.source;
}

PredicateAlignment PredicateAlignment::parse(std::string_view tsv) {
    PredicateAlignment table;
    std::istringstream in{std::string(tsv)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() || line.find('\t', tab + 1) != std::string::npos) {
            throw std::runtime_error("alignment table line " + std::to_string(line_no) + ": expected two tab-separated columns");
        }
        table.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return table;
}

PredicateAlignment PredicateAlignment::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open alignment table " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

PredicateId PredicateAlignment::map(std::string_view iri) const {
    auto it = map_.find(iri);
    return PredicateId(it == map_.end() ? std::string(iri) : it->second);
}

ClaimStore ClaimStore::from_claims(std::vector<Claim> claims) {
    ClaimStore store;
    store.stats_.statements = claims.size();
    store.claims_ = std::move(claims);
    store.index();
    store.stats_.claims = store.claims_.size();
    store.stats_.duplicates = store.stats_.statements - store.claims_.size();
    return store;
}

void ClaimStore::index() {
    std::sort(claims_.begin(), claims_.end());
    claims_.erase(std::unique(claims_.begin(), claims_.end()), claims_.end());

    conflict_sets_.clear();
    sources_.clear();
    claim_set_.assign(claims_.size(), static_cast<std::size_t>(-1));

    std::size_t i = 0;
    while (i < claims_.size()) {
        std::size_t j = i;
        std::size_t distinct = 0;
        while (j < claims_.size() && claims_[j].entity == claims_[i].entity &&
               claims_[j].predicate == claims_[i].predicate) {
            if (j == i || !(claims_[j].value == claims_[j - 1].value)) ++distinct;
            ++j;
        }
        if (distinct >= 2) {
            ConflictSet set{claims_[i].entity, claims_[i].predicate, {}};
            for (std::size_t k = i; k < j; ++k) {
                if (set.objects.empty() || !(set.objects.back().value == claims_[k].value)) {
                    set.objects.push_back({claims_[k].value, {}});
                }
                set.objects.back().sources.push_back(claims_[k].source);
                claim_set_[k] = conflict_sets_.size();
            }
            conflict_sets_.push_back(std::move(set));
        }
        i = j;
    }
    for (std::size_t k = 0; k < claims_.size(); ++k) sources_[claims_[k].source].push_back(k);
}

ClaimStore build_claims(const Corpus& corpus, const EntityClusterMap& clusters, const PredicateAlignment& alignment,
                        const SourceResolver& resolver) {
    ClaimStore store;
    ClaimStats& stats = store.stats_;
    stats.statements = corpus.statements.size();
    std::vector<Claim> claims;
    claims.reserve(corpus.statements.size());

    auto warn = [&](std::size_t i, std::string reason) {
        store.diagnostics_.push_back({std::string(corpus.file_of(i)), corpus.statements[i].line, std::move(reason)});
    };

    for (std::size_t i = 0; i < corpus.statements.size(); ++i) {
        const RdfStatement& st = corpus.statements[i];
        if (st.predicate == kOwlSameAs) {
            ++stats.sameas;
            continue;
        }
        if (st.object.kind == Term::Kind::Blank) {
            ++stats.blank_object;
            continue;
        }
        auto value = normalize_term(st.object);
        if (!value) {
            ++stats.null_object;
            continue;
        }
        auto source = resolver.statement_source(st);
        if (!source) {
            ++stats.no_source;
            warn(i, "no source for statement (subject " + st.subject + ")");
            continue;
        }
        if (value->kind() == ValueKind::Reference) {
            value = NormalizedValue::reference(clusters.cluster_of(value->as_reference()).str());
        }
        claims.push_back({clusters.cluster_of(st.subject), alignment.map(st.predicate), std::move(*value), std::move(*source)});
    }

    std::size_t before = claims.size();
    store.claims_ = std::move(claims);
    store.index();
    stats.claims = store.claims_.size();
    stats.duplicates = before - stats.claims;
    return store;
}

}  // namespace truthdiscover
