#include "truthdiscover/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace truthdiscover {

namespace {

// Highest score, then more supporters, then the smallest value.
std::size_t argmax_with_ties(const ConflictSet& set, const std::vector<double>& score) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < set.objects.size(); ++i) {
        if (score[i] != score[best]) {
            if (score[i] > score[best]) best = i;
            continue;
        }
        std::size_t ni = set.objects[i].sources.size();
        std::size_t nb = set.objects[best].sources.size();
        if (ni != nb) {
            if (ni > nb) best = i;
            continue;
        }
        if (set.objects[i].value < set.objects[best].value) best = i;
    }
    return best;
}

constexpr double kMaxTrust = 1.0 - 1e-9;

}  // namespace

std::string_view method_name(BaselineMethod m) noexcept {
    return m == BaselineMethod::Vote ? "vote" : "truthfinder";
}

BaselineDecision vote(const ConflictSet& set) {
    BaselineDecision d;
    d.entity = set.entity;
    d.predicate = set.predicate;
    d.method = BaselineMethod::Vote;
    d.scores.reserve(set.objects.size());
    for (const auto& obj : set.objects) d.scores.push_back(static_cast<double>(obj.sources.size()));
    d.chosen_index = argmax_with_ties(set, d.scores);
    d.chosen = set.objects[d.chosen_index].value;
    return d;
}

std::vector<BaselineDecision> vote_all(const ClaimStore& store) {
    std::vector<BaselineDecision> out;
    out.reserve(store.conflict_sets().size());
    for (const auto& set : store.conflict_sets()) out.push_back(vote(set));
    return out;
}

TruthFinderResult truthfinder(const ClaimStore& store, const TruthFinderConfig& cfg) {
    const auto& sets = store.conflict_sets();
    TruthFinderResult res;
    for (const auto& [id, claims] : store.sources()) res.sources.push_back(id);
    auto index = [&](const SourceId& id) {
        return static_cast<std::size_t>(std::lower_bound(res.sources.begin(), res.sources.end(), id) - res.sources.begin());
    };

    std::vector<std::vector<std::vector<std::size_t>>> supporters(sets.size());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> claims_of(res.sources.size());
    std::vector<std::vector<double>> sim(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& objs = sets[s].objects;
        supporters[s].resize(objs.size());
        for (std::size_t o = 0; o < objs.size(); ++o) {
            for (const auto& src : objs[o].sources) {
                supporters[s][o].push_back(index(src));
                claims_of[index(src)].emplace_back(s, o);
            }
        }
        sim[s].assign(objs.size() * objs.size(), 1.0);
        for (std::size_t i = 0; i < objs.size(); ++i) {
            for (std::size_t j = i + 1; j < objs.size(); ++j) {
                double v = similarity(objs[i].value, objs[j].value, cfg.similarity);
                sim[s][i * objs.size() + j] = v;
                sim[s][j * objs.size() + i] = v;
            }
        }
    }

    res.trust.assign(res.sources.size(), cfg.initial_trust);
    std::vector<std::vector<double>> confidence(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) confidence[s].assign(sets[s].objects.size(), 0.0);
    for (double t : res.trust) {
        res.min_trust_seen = std::min(res.min_trust_seen, t);
        res.max_trust_seen = std::max(res.max_trust_seen, t);
    }

    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        std::vector<double> score(res.sources.size());
        for (std::size_t k = 0; k < score.size(); ++k) score[k] = -std::log(1.0 - std::min(res.trust[k], kMaxTrust));

        for (std::size_t s = 0; s < sets.size(); ++s) {
            const std::size_t m = sets[s].objects.size();
            std::vector<double> sigma(m, 0.0);
            for (std::size_t o = 0; o < m; ++o) {
                for (auto k : supporters[s][o]) sigma[o] += score[k];
            }
            for (std::size_t o = 0; o < m; ++o) {
                double adjusted = sigma[o];
                for (std::size_t p = 0; p < m; ++p) {
                    if (p != o) adjusted += cfg.implication * sigma[p] * (sim[s][p * m + o] - cfg.base_similarity);
                }
                confidence[s][o] = 1.0 / (1.0 + std::exp(-cfg.dampening * adjusted));
            }
        }

        double change = 0.0;
        for (std::size_t k = 0; k < res.sources.size(); ++k) {
            const auto& items = claims_of[k];
            if (items.empty()) continue;
            double sum = 0.0;
            for (auto [s, o] : items) sum += confidence[s][o];
            double t = sum / static_cast<double>(items.size());
            change = std::max(change, std::abs(t - res.trust[k]));
            res.trust[k] = t;
            res.min_trust_seen = std::min(res.min_trust_seen, t);
            res.max_trust_seen = std::max(res.max_trust_seen, t);
        }
        res.iterations = iter;
        if (change < cfg.tolerance) {
            res.converged = true;
            break;
        }
    }

    res.decisions.reserve(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        BaselineDecision d;
        d.entity = sets[s].entity;
        d.predicate = sets[s].predicate;
        d.method = BaselineMethod::TruthFinder;
        d.scores = confidence[s];
        d.chosen_index = argmax_with_ties(sets[s], d.scores);
        d.chosen = sets[s].objects[d.chosen_index].value;
        res.decisions.push_back(std::move(d));
    }
    return res;
}

}  // namespace truthdiscover
