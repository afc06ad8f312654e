#include "truthdiscover/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "truthdiscover/rdf.hpp"

namespace truthdiscover {

namespace {

constexpr std::string_view kMonths[] = {"January", "February", "March",     "April",   "May",      "June",
                                        "July",    "August",   "September", "October", "November", "December"};
constexpr int kMaxDraws = 100;
constexpr std::string_view kLabel = "http://www.w3.org/2000/01/rdf-schema#label";

// mt19937_64 is fully specified; the distributions below are written out so
// output does not depend on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t below(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n))); }
    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
    bool chance(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

std::string number_lexical(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

NormalizedValue gold_value(Rng& rng, std::size_t predicate) {
    switch (predicate % 3) {
        case 0: return NormalizedValue::number(round2(rng.uniform(10.0, 1000.0)));
        case 1: return NormalizedValue::date({rng.between(1700, 2000), rng.between(1, 12), rng.between(1, 28)});
        default: {
            std::string word(static_cast<std::size_t>(rng.between(6, 10)), 'a');
            for (auto& c : word) c = static_cast<char>('a' + rng.below(26));
            word[0] = static_cast<char>(word[0] - 'a' + 'A');
            return NormalizedValue::text(word);
        }
    }
}

NormalizedValue perturb(Rng& rng, const NormalizedValue& gold) {
    switch (gold.kind()) {
        case ValueKind::Number: {
            double delta = rng.uniform(0.05, 0.6) * (rng.chance(0.5) ? 1.0 : -1.0);
            return NormalizedValue::number(round2(gold.as_number() * (1.0 + delta)));
        }
        case ValueKind::Date: {
            PartialDate d = gold.as_date();
            switch (rng.below(3)) {
                case 0: d.year += rng.between(1, 10) * (rng.chance(0.5) ? 1 : -1); break;
                case 1: d.month = 1 + (*d.month - 1 + rng.between(1, 11)) % 12; break;
                default: d.day = 1 + (*d.day - 1 + rng.between(1, 27)) % 28; break;
            }
            return NormalizedValue::date(d);
        }
        default: {
            std::string s = gold.as_text();
            int edits = rng.between(1, 3);
            for (int e = 0; e < edits; ++e) {
                std::size_t pos = rng.below(s.size());
                char c = static_cast<char>('a' + rng.below(26));
                switch (rng.below(3)) {
                    case 0: s[pos] = c; break;
                    case 1: s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), c); break;
                    default:
                        if (s.size() > 3) s.erase(pos, 1);
                        break;
                }
            }
            return NormalizedValue::text(s);
        }
    }
}

// Candidate values: index 0 is gold, the rest are distinct perturbations.
std::vector<NormalizedValue> candidates(Rng& rng, std::size_t predicate, std::size_t count) {
    std::vector<NormalizedValue> values{gold_value(rng, predicate)};
    std::size_t attempts = 0;
    while (values.size() < count) {
        NormalizedValue v = perturb(rng, values[0]);
        bool fresh = std::none_of(values.begin(), values.end(), [&](const NormalizedValue& x) { return x == v; });
        if (fresh) values.push_back(std::move(v));
        if (++attempts > 1000) throw std::runtime_error("could not generate distinct candidate values");
    }
    return values;
}

Term literal_for(const NormalizedValue& v, std::size_t source) {
    if (v.kind() == ValueKind::Number) return Term::literal(number_lexical(v.as_number()), std::string(kXsdNamespace) + "decimal");
    if (v.kind() == ValueKind::Date) {
        const auto& d = v.as_date();
        switch (source % 3) {
            case 0: return Term::literal(render(v), std::string(kXsdNamespace) + "date");
            case 1: return Term::literal(std::to_string(*d.month) + "/" + std::to_string(*d.day) + "/" + std::to_string(d.year));
            default:
                return Term::literal(std::to_string(*d.day) + " " + std::string(kMonths[*d.month - 1]) + " " +
                                     std::to_string(d.year));
        }
    }
    return to_term(v);
}

std::string entity_iri(const std::string& host, std::size_t entity) {
    return "http://" + host + "/resource/E" + std::to_string(entity);
}

}  // namespace

void SynthConfig::validate() const {
    if (n_sources < 1 || n_entities < 1 || n_conflicts < 1 || attachment_m < 1) {
        throw std::invalid_argument("synthetic counts must be at least 1");
    }
    if (values_per_conflict < 2) throw std::invalid_argument("values_per_conflict must be at least 2");
    if (values_per_conflict > n_sources) throw std::invalid_argument("values_per_conflict exceeds the number of sources");
    if (!(reliability_low >= 0.0 && reliability_low <= reliability_high && reliability_high <= 1.0)) {
        throw std::invalid_argument("reliability range must be ordered inside [0, 1]");
    }
    if (!(sameas_fidelity >= 0.0 && sameas_fidelity <= 1.0)) throw std::invalid_argument("sameas_fidelity must lie in [0, 1]");
}

SynthData generate(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    SynthData out;
    const std::size_t n = cfg.n_sources;
    const std::size_t max_providers = cfg.values_per_conflict;

    for (std::size_t i = 0; i < n; ++i) {
        out.source_hosts.push_back("source" + std::to_string(i) + ".org");
        out.reliability.push_back(rng.uniform(cfg.reliability_low, cfg.reliability_high));
    }
    out.conflict_claims.assign(n, 0);

    // Arrival schedule over conflict indices.
    const std::size_t founders = std::min(n, max_providers);
    std::vector<std::vector<std::size_t>> arrivals(cfg.n_conflicts);
    for (std::size_t i = founders; i < n; ++i) {
        double frac = static_cast<double>(i - founders + 1) / static_cast<double>(n - founders + 1);
        auto at = static_cast<std::size_t>(static_cast<double>(cfg.n_conflicts) * std::sqrt(frac));
        arrivals[std::min(cfg.n_conflicts - 1, at == 0 ? 0 : at - 1)].push_back(i);
    }

    std::vector<std::size_t> available;
    for (std::size_t i = 0; i < founders; ++i) available.push_back(i);
    std::deque<std::pair<std::size_t, std::size_t>> pending;  // (source, placements left)

    auto draw = [&](const std::vector<char>& taken) {
        double total = 0.0;
        for (auto i : available) {
            if (!taken[i]) total += static_cast<double>(out.conflict_claims[i] + cfg.attachment_m);
        }
        double r = rng.uniform() * total;
        std::size_t last = n;
        for (auto i : available) {
            if (taken[i]) continue;
            last = i;
            r -= static_cast<double>(out.conflict_claims[i] + cfg.attachment_m);
            if (r < 0.0) return i;
        }
        return last;
    };

    std::ostringstream nt;
    std::vector<std::tuple<std::size_t, std::string, NormalizedValue>> pending_gold;
    std::vector<std::set<std::size_t>> entity_sources(cfg.n_entities);
    auto emit = [&](std::size_t source, std::size_t entity, const std::string& predicate, const Term& object) {
        RdfStatement st{entity_iri(out.source_hosts[source], entity), predicate, object, std::nullopt, 0};
        nt << to_ntriples(st) << '\n';
        entity_sources[entity].insert(source);
    };

    for (std::size_t k = 0; k < cfg.n_conflicts; ++k) {
        for (auto i : arrivals[k]) {
            available.push_back(i);
            pending.emplace_back(i, cfg.attachment_m);
        }
        std::size_t want = cfg.uniform_support ? cfg.values_per_conflict : 2 + rng.below(cfg.values_per_conflict - 1);
        want = std::min(want, available.size());

        std::vector<char> taken(n, 0);
        std::vector<std::size_t> providers;
        while (!pending.empty() && providers.size() < want) {
            auto& [src, left] = pending.front();
            providers.push_back(src);
            taken[src] = 1;
            if (--left == 0) {
                pending.pop_front();
            } else {
                // a source is placed at most once per conflict
                pending.push_back(pending.front());
                pending.pop_front();
                if (std::all_of(pending.begin(), pending.end(), [&](const auto& p) { return taken[p.first] != 0; })) break;
            }
        }
        while (providers.size() < want) {
            std::size_t i = draw(taken);
            providers.push_back(i);
            taken[i] = 1;
        }

        const std::size_t entity = k % cfg.n_entities;
        const std::size_t predicate = k / cfg.n_entities;
        auto values = candidates(rng, predicate, cfg.values_per_conflict);

        std::vector<std::size_t> choice(providers.size(), 0);
        bool conflict = true;
        if (cfg.uniform_support) {
            // one supporter per value; the gold holder is drawn by reliability
            double total = 0.0;
            for (auto p : providers) total += out.reliability[p] + 1e-9;
            double r = rng.uniform() * total;
            std::size_t holder = providers.size() - 1;
            for (std::size_t q = 0; q < providers.size(); ++q) {
                r -= out.reliability[providers[q]] + 1e-9;
                if (r < 0.0) {
                    holder = q;
                    break;
                }
            }
            std::size_t next_false = 1;
            for (std::size_t q = 0; q < providers.size(); ++q) choice[q] = q == holder ? 0 : next_false++;
        } else {
            // Redraw until the set is a real conflict that contains the gold
            // value; if that never happens (near-perfect providers) everyone
            // asserts the gold value and there is no conflict.
            bool accepted = false;
            for (int attempt = 0; attempt < kMaxDraws && !accepted; ++attempt) {
                for (std::size_t q = 0; q < providers.size(); ++q) {
                    choice[q] = rng.chance(out.reliability[providers[q]]) ? 0 : 1 + rng.below(values.size() - 1);
                }
                auto gold_count = std::count(choice.begin(), choice.end(), std::size_t{0});
                accepted = gold_count > 0 && gold_count < static_cast<std::ptrdiff_t>(choice.size());
            }
            if (!accepted) std::fill(choice.begin(), choice.end(), std::size_t{0});
            conflict = accepted;
        }

        std::string pred = "http://example.org/ontology/p" + std::to_string(predicate);
        for (std::size_t q = 0; q < providers.size(); ++q) {
            emit(providers[q], entity, pred, literal_for(values[choice[q]], providers[q]));
            ++out.conflict_claims[providers[q]];
        }
        if (conflict) pending_gold.emplace_back(entity, pred, values[0]);
    }

    // Entities without conflicts still carry a unanimous label.
    for (std::size_t e = 0; e < cfg.n_entities; ++e) {
        if (!entity_sources[e].empty()) continue;
        std::vector<char> taken(n, 0);
        std::size_t count = std::min<std::size_t>(1 + rng.below(2), available.size());
        for (std::size_t c = 0; c < count; ++c) {
            std::size_t i = draw(taken);
            taken[i] = 1;
            emit(i, e, std::string(kLabel), Term::literal("Entity " + std::to_string(e)));
        }
    }

    // owl:sameAs chain per entity: each provider links to a random earlier one.
    std::vector<std::string> cluster_id(cfg.n_entities);
    for (std::size_t e = 0; e < cfg.n_entities; ++e) {
        std::vector<std::size_t> members(entity_sources[e].begin(), entity_sources[e].end());
        for (std::size_t q = members.size(); q > 1; --q) std::swap(members[q - 1], members[rng.below(q)]);
        for (std::size_t q = 1; q < members.size(); ++q) {
            std::size_t a = members[q];
            std::size_t b = members[rng.below(q)];
            bool toward_better = rng.chance(cfg.sameas_fidelity);
            bool a_better = out.reliability[a] > out.reliability[b];
            std::size_t from = (a_better != toward_better) ? a : b;
            std::size_t to = from == a ? b : a;
            RdfStatement st{entity_iri(out.source_hosts[from], e), std::string(kOwlSameAs),
                            Term::iri(entity_iri(out.source_hosts[to], e)), std::nullopt, 0};
            nt << to_ntriples(st) << '\n';
        }
        for (auto s : entity_sources[e]) {
            std::string iri = entity_iri(out.source_hosts[s], e);
            if (cluster_id[e].empty() || iri < cluster_id[e]) cluster_id[e] = iri;
        }
    }

    // The cluster id is the smallest member IRI.
    for (auto& [entity, pred, value] : pending_gold) {
        out.gold.truth.emplace(GoldKey{EntityClusterId(cluster_id[entity]), PredicateId(pred)}, std::move(value));
    }
    out.ntriples = nt.str();
    return out;
}

std::string gold_to_tsv(const GoldStandard& gold) {
    std::string out;
    for (const auto& [key, value] : gold.truth) {
        out += key.first.str();
        out += '\t';
        out += key.second.str();
        out += '\t';
        out += render_tagged(value);
        out += '\n';
    }
    return out;
}

GoldStandard gold_from_tsv(std::string_view tsv) {
    GoldStandard gold;
    std::size_t line_no = 0;
    while (!tsv.empty()) {
        auto eol = tsv.find('\n');
        std::string_view line = tsv.substr(0, eol);
        tsv = eol == std::string_view::npos ? std::string_view{} : tsv.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        auto a = line.find('\t');
        auto b = a == std::string_view::npos ? a : line.find('\t', a + 1);
        if (b == std::string_view::npos) {
            throw std::runtime_error("gold line " + std::to_string(line_no) + ": expected three tab-separated fields");
        }
        auto value = parse_tagged(line.substr(b + 1));
        if (!value) throw std::runtime_error("gold line " + std::to_string(line_no) + ": bad value");
        gold.truth.insert_or_assign(GoldKey{EntityClusterId(std::string(line.substr(0, a))),
                                            PredicateId(std::string(line.substr(a + 1, b - a - 1)))},
                                    *value);
    }
    return gold;
}

}  // namespace truthdiscover
