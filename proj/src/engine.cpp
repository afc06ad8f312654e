#include "truthdiscover/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "truthdiscover/parallel.hpp"

namespace truthdiscover {

namespace {

// Conflict sets rewritten over source indices.
struct IndexedStore {
    std::vector<SourceId> sources;
    std::vector<std::vector<std::vector<std::uint32_t>>> supporters;  // [set][object] -> source indices
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> claims_of;  // [source] -> (set, object)
};

IndexedStore index_store(const ClaimStore& store) {
    IndexedStore ix;
    for (const auto& [id, claims] : store.sources()) ix.sources.push_back(id);
    ix.claims_of.resize(ix.sources.size());
    auto index = [&](const SourceId& id) {
        return static_cast<std::uint32_t>(std::lower_bound(ix.sources.begin(), ix.sources.end(), id) - ix.sources.begin());
    };
    const auto& sets = store.conflict_sets();
    ix.supporters.resize(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        ix.supporters[s].resize(sets[s].objects.size());
        for (std::size_t o = 0; o < sets[s].objects.size(); ++o) {
            for (const auto& src : sets[s].objects[o].sources) {
                auto k = index(src);
                ix.supporters[s][o].push_back(k);
                ix.claims_of[k].emplace_back(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(o));
            }
        }
    }
    return ix;
}

double mean_of(const std::vector<std::uint32_t>& idx, const std::vector<double>& values) {
    double sum = 0.0;
    for (auto k : idx) sum += values[k];
    return sum / static_cast<double>(idx.size());
}

double sum_of(const std::vector<std::uint32_t>& idx, const std::vector<double>& values) {
    double sum = 0.0;
    for (auto k : idx) sum += values[k];
    return sum;
}

std::vector<double> update_sources(const IndexedStore& ix, const std::vector<std::vector<double>>& tau, double fallback) {
    std::vector<double> t(ix.sources.size(), fallback);
    for (std::size_t k = 0; k < ix.sources.size(); ++k) {
        const auto& items = ix.claims_of[k];
        if (items.empty()) continue;
        double sum = 0.0;
        for (auto [s, o] : items) sum += tau[s][o];
        t[k] = sum / static_cast<double>(items.size());
    }
    return t;
}

}  // namespace

void EngineConfig::validate() const {
    if (!(outer_threshold > 0.0)) throw std::invalid_argument("outer threshold must be positive");
    if (outer_max < 1) throw std::invalid_argument("outer_max must be at least 1");
    if (!(initial_trust >= 0.0 && initial_trust <= 1.0)) throw std::invalid_argument("initial trust must lie in [0, 1]");
    bp.validate();
    field.validate();
    similarity.validate();
}

std::size_t TrustState::source_index(const SourceId& id) const {
    auto it = std::lower_bound(sources.begin(), sources.end(), id);
    if (it == sources.end() || *it != id) throw std::out_of_range("unknown source " + id.str());
    return static_cast<std::size_t>(it - sources.begin());
}

double mean_trust(std::span<const double> values, double fallback) {
    if (values.empty()) return fallback;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

std::vector<double> object_base_trust(const ConflictSet& set, const std::function<double(const SourceId&)>& t_smoothed) {
    std::vector<double> out;
    out.reserve(set.objects.size());
    for (const auto& obj : set.objects) {
        std::vector<double> values;
        values.reserve(obj.sources.size());
        for (const auto& s : obj.sources) values.push_back(t_smoothed(s));
        out.push_back(mean_trust(values, 0.0));
    }
    return out;
}

std::vector<double> source_trustworthiness(const ClaimStore& store, const std::vector<SourceId>& sources,
                                           const std::vector<std::vector<double>>& tau, double fallback) {
    IndexedStore ix = index_store(store);
    if (ix.sources != sources) throw std::invalid_argument("source list does not match the claim store");
    return update_sources(ix, tau, fallback);
}

BpResult infer_conflict_set(std::span<const double> base_trust, std::span<const PairSimilarity> pairs,
                            const EngineConfig& cfg) {
    MarkovField field = build_field(base_trust, pairs, cfg.field);
    return loopy_bp(field, cfg.bp);
}

std::size_t select_truth(const ConflictSet& set, std::span<const double> score, std::span<const double> support_trust) {
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
        if (support_trust[i] != support_trust[best]) {
            if (support_trust[i] > support_trust[best]) best = i;
            continue;
        }
        if (set.objects[i].value < set.objects[best].value) best = i;
    }
    return best;
}

Resolution resolve_all(const ClaimStore& store, const PriorBeliefs& priors, const EngineConfig& cfg) {
    cfg.validate();
    const auto& sets = store.conflict_sets();
    IndexedStore ix = index_store(store);
    const std::size_t n_sources = ix.sources.size();

    Resolution res;
    TrustState& st = res.state;
    st.sources = ix.sources;
    st.nbr.resize(n_sources);
    for (std::size_t k = 0; k < n_sources; ++k) {
        auto it = priors.nbr.find(ix.sources[k]);
        st.nbr[k] = it == priors.nbr.end() ? 0.5 : it->second;
    }
    st.t.assign(n_sources, cfg.initial_trust);
    st.t_smoothed.resize(n_sources);
    for (std::size_t k = 0; k < n_sources; ++k) st.t_smoothed[k] = smooth_trustworthiness(st.nbr[k], st.t[k]);

    // Similarities never change across iterations.
    std::vector<std::vector<PairSimilarity>> pairs(sets.size());
    parallel_for(sets.size(), cfg.threads, [&](std::size_t s) { pairs[s] = pair_similarities(sets[s], cfg.similarity); });

    st.tau.resize(sets.size());
    st.tau_base.resize(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) st.tau[s].assign(sets[s].objects.size(), cfg.initial_trust);
    std::vector<char> bp_ok(sets.size(), 1);

    std::size_t total_objects = 0;
    for (const auto& set : sets) total_objects += set.objects.size();

    for (std::size_t iter = 1; iter <= cfg.outer_max; ++iter) {
        std::vector<std::vector<double>> next(sets.size());
        parallel_for(sets.size(), cfg.threads, [&](std::size_t s) {
            std::vector<double> base(sets[s].objects.size());
            for (std::size_t o = 0; o < base.size(); ++o) base[o] = mean_of(ix.supporters[s][o], st.t_smoothed);
            BpResult bp = infer_conflict_set(base, pairs[s], cfg);
            next[s].resize(base.size());
            for (std::size_t o = 0; o < base.size(); ++o) next[s][o] = bp.p_true(o);
            bp_ok[s] = bp.converged ? 1 : 0;
        });

        TraceRow row;
        row.iteration = iter;
        double sum = 0.0;
        for (std::size_t s = 0; s < sets.size(); ++s) {
            for (std::size_t o = 0; o < next[s].size(); ++o) {
                double d = std::abs(next[s][o] - st.tau[s][o]);
                sum += d;
                row.max_delta_tau = std::max(row.max_delta_tau, d);
            }
            if (!bp_ok[s]) ++row.bp_unconverged;
        }
        row.mean_delta_tau = total_objects == 0 ? 0.0 : sum / static_cast<double>(total_objects);
        st.tau = std::move(next);

        st.t = update_sources(ix, st.tau, cfg.initial_trust);
        for (std::size_t k = 0; k < n_sources; ++k) st.t_smoothed[k] = smooth_trustworthiness(st.nbr[k], st.t[k]);
        if (cfg.snapshot_sources) row.t_smoothed = st.t_smoothed;

        st.iteration = iter;
        bool done = row.max_delta_tau < cfg.outer_threshold;
        res.trace.rows.push_back(std::move(row));
        if (done) {
            res.converged = true;
            break;
        }
    }

    for (std::size_t s = 0; s < sets.size(); ++s) {
        st.tau_base[s].resize(sets[s].objects.size());
        for (std::size_t o = 0; o < sets[s].objects.size(); ++o) {
            st.tau_base[s][o] = mean_of(ix.supporters[s][o], st.t_smoothed);
        }
    }

    res.decisions.reserve(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        std::vector<double> support_trust(sets[s].objects.size());
        for (std::size_t o = 0; o < support_trust.size(); ++o) support_trust[o] = sum_of(ix.supporters[s][o], st.t_smoothed);
        std::size_t best = select_truth(sets[s], st.tau[s], support_trust);
        TruthDecision d;
        d.entity = sets[s].entity;
        d.predicate = sets[s].predicate;
        d.chosen_index = best;
        d.chosen = sets[s].objects[best].value;
        d.tau = st.tau[s];
        d.support = sets[s].objects[best].sources;
        d.bp_converged = bp_ok[s] != 0;
        res.decisions.push_back(std::move(d));
    }
    return res;
}

}  // namespace truthdiscover
