#include "truthdiscover/prior.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace truthdiscover {

namespace {

// Incoming adjacency in sorted-id index space, with the per-edge weight
// L(l, w) / C(l) precomputed.
struct InEdges {
    std::vector<SourceId> ids;
    std::vector<std::size_t> offset;
    std::vector<std::size_t> from;
    std::vector<double> weight;
};

InEdges incoming(const SourceBeliefGraph& sbg) {
    InEdges in;
    in.ids.assign(sbg.vertices().begin(), sbg.vertices().end());
    auto index = [&](const SourceId& id) {
        return static_cast<std::size_t>(std::lower_bound(in.ids.begin(), in.ids.end(), id) - in.ids.begin());
    };
    std::vector<double> out_degree(in.ids.size(), 0.0);
    for (std::size_t i = 0; i < in.ids.size(); ++i) out_degree[i] = static_cast<double>(sbg.out_degree(in.ids[i]));

    std::vector<std::vector<std::pair<std::size_t, double>>> lists(in.ids.size());
    for (const auto& [pair, count] : sbg.edges()) {
        std::size_t l = index(pair.first);
        std::size_t w = index(pair.second);
        lists[w].emplace_back(l, static_cast<double>(count) / out_degree[l]);
    }
    in.offset.push_back(0);
    for (auto& list : lists) {
        std::sort(list.begin(), list.end());
        for (auto [l, wt] : list) {
            in.from.push_back(l);
            in.weight.push_back(wt);
        }
        in.offset.push_back(in.from.size());
    }
    return in;
}

void sweep(const InEdges& in, double d, const std::vector<double>& cur, std::vector<double>& next) {
    for (std::size_t w = 0; w < cur.size(); ++w) {
        double sum = 0.0;
        for (std::size_t k = in.offset[w]; k < in.offset[w + 1]; ++k) sum += cur[in.from[k]] * in.weight[k];
        next[w] = (1.0 - d) + d * sum;
    }
}

}  // namespace

void PriorConfig::validate() const {
    if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping must lie in (0, 1)");
    if (!(tolerance > 0.0)) throw std::invalid_argument("prior tolerance must be positive");
    if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
}

PriorBeliefs compute_prior(const SourceBeliefGraph& sbg, const PriorConfig& cfg) {
    cfg.validate();
    if (sbg.empty()) throw EmptyGraph();
    InEdges in = incoming(sbg);
    std::vector<double> cur(in.ids.size(), 1.0);
    std::vector<double> next(in.ids.size(), 0.0);

    PriorBeliefs out;
    for (std::size_t s = 1; s <= cfg.max_sweeps; ++s) {
        sweep(in, cfg.damping, cur, next);
        double change = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) change = std::max(change, std::abs(next[i] - cur[i]));
        cur.swap(next);
        out.sweeps_used = s;
        out.residual = change;
        if (change < cfg.tolerance) {
            out.converged = true;
            break;
        }
    }
    for (std::size_t i = 0; i < in.ids.size(); ++i) out.br.emplace(in.ids[i], cur[i]);
    return out;
}

void normalize_prior(PriorBeliefs& beliefs) {
    beliefs.nbr.clear();
    if (beliefs.br.empty()) return;
    auto [lo, hi] = std::minmax_element(beliefs.br.begin(), beliefs.br.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    double min = lo->second;
    double max = hi->second;
    for (const auto& [id, value] : beliefs.br) {
        beliefs.nbr.emplace(id, max == min ? 0.5 : (value - min) / (max - min));
    }
}

double prior_residual(const SourceBeliefGraph& sbg, const std::map<SourceId, double>& br, double damping) {
    InEdges in = incoming(sbg);
    std::vector<double> cur(in.ids.size());
    for (std::size_t i = 0; i < in.ids.size(); ++i) cur[i] = br.at(in.ids[i]);
    std::vector<double> rhs(cur.size());
    sweep(in, damping, cur, rhs);
    double worst = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) worst = std::max(worst, std::abs(rhs[i] - cur[i]));
    return worst;
}

}  // namespace truthdiscover
