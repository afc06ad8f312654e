#include "truthdiscover/markov_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace truthdiscover {

void MarkovField::set_unary(std::size_t i, double phi0, double phi1) {
    if (!(phi0 > 0.0) || !(phi1 > 0.0)) throw std::invalid_argument("unary potentials must be positive");
    unary_.at(i) = {phi0, phi1};
}

void MarkovField::add_edge(std::size_t i, std::size_t j, const PairTable& psi) {
    if (i == j || i >= size() || j >= size()) throw std::invalid_argument("invalid edge endpoints");
    for (const auto& row : psi) {
        for (double v : row) {
            if (!(v > 0.0)) throw std::invalid_argument("pairwise potentials must be positive");
        }
    }
    if (i < j) {
        edges_.push_back({i, j, psi});
    } else {
        edges_.push_back({j, i, {{{psi[0][0], psi[1][0]}, {psi[0][1], psi[1][1]}}}});
    }
}

bool MarkovField::is_forest() const {
    std::vector<std::size_t> parent(size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : edges_) {
        auto a = find(e.i);
        auto b = find(e.j);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

void BpConfig::validate() const {
    if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("bp damping must lie in [0, 1)");
    if (!(tolerance > 0.0)) throw std::invalid_argument("bp tolerance must be positive");
    if (max_rounds < 1) throw std::invalid_argument("bp max rounds must be at least 1");
}

BpResult loopy_bp(const MarkovField& field, const BpConfig& cfg) {
    cfg.validate();
    const std::size_t n = field.size();
    const auto& edges = field.edges();

    // Directed message 2k runs i -> j of edge k, 2k + 1 runs j -> i.
    std::vector<std::array<double, 2>> msg(edges.size() * 2, {0.5, 0.5});
    std::vector<std::array<double, 2>> next(msg.size());
    std::vector<std::vector<std::size_t>> incoming(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        incoming[edges[k].j].push_back(2 * k);
        incoming[edges[k].i].push_back(2 * k + 1);
    }

    // Product of the unary potential and all messages into `node`, leaving
    // out the message `skip`.
    auto cavity = [&](std::size_t node, std::size_t skip) {
        std::array<double, 2> c = field.unary(node);
        for (std::size_t m : incoming[node]) {
            if (m == skip) continue;
            c[0] *= msg[m][0];
            c[1] *= msg[m][1];
        }
        return c;
    };

    BpResult result;
    result.converged = true;
    if (!edges.empty()) {
        result.converged = false;
        for (std::size_t round = 1; round <= cfg.max_rounds; ++round) {
            double change = 0.0;
            for (std::size_t k = 0; k < edges.size(); ++k) {
                const auto& e = edges[k];
                for (int dir = 0; dir < 2; ++dir) {
                    std::size_t out = 2 * k + dir;
                    std::size_t src = dir == 0 ? e.i : e.j;
                    std::size_t reverse = 2 * k + (1 - dir);
                    auto c = cavity(src, reverse);
                    std::array<double, 2> m{};
                    for (int y_dst = 0; y_dst < 2; ++y_dst) {
                        for (int y_src = 0; y_src < 2; ++y_src) {
                            double psi = dir == 0 ? e.psi[y_src][y_dst] : e.psi[y_dst][y_src];
                            m[y_dst] += c[y_src] * psi;
                        }
                    }
                    double z = m[0] + m[1];
                    for (int y = 0; y < 2; ++y) {
                        double v = (1.0 - cfg.damping) * (m[y] / z) + cfg.damping * msg[out][y];
                        change = std::max(change, std::abs(v - msg[out][y]));
                        next[out][y] = v;
                    }
                    double zn = next[out][0] + next[out][1];
                    next[out][0] /= zn;
                    next[out][1] /= zn;
                }
            }
            msg.swap(next);
            result.rounds = round;
            result.max_change = change;
            if (change < cfg.tolerance) {
                result.converged = true;
                break;
            }
        }
    }

    result.marginals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto b = cavity(i, static_cast<std::size_t>(-1));
        double z = b[0] + b[1];
        result.marginals[i] = {b[0] / z, b[1] / z};
    }
    return result;
}

void FieldParams::validate() const {
    if (!(edge_threshold >= 0.0 && edge_threshold <= 1.0)) throw std::invalid_argument("edge threshold must lie in [0, 1]");
    if (!(coupling >= 0.0)) throw std::invalid_argument("coupling must be non-negative");
    if (!(clamp > 0.0 && clamp < 0.5)) throw std::invalid_argument("clamp must lie in (0, 0.5)");
}

std::vector<PairSimilarity> pair_similarities(const ConflictSet& set, const SimilarityConfig& cfg) {
    std::vector<PairSimilarity> out;
    const auto& objs = set.objects;
    out.reserve(objs.size() * (objs.size() - (objs.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < objs.size(); ++i) {
        for (std::size_t j = i + 1; j < objs.size(); ++j) out.push_back({i, j, similarity(objs[i].value, objs[j].value, cfg)});
    }
    return out;
}

MarkovField build_field(std::span<const double> base_trust, std::span<const PairSimilarity> pairs,
                        const FieldParams& params) {
    MarkovField field(base_trust.size());
    for (std::size_t i = 0; i < base_trust.size(); ++i) {
        double tau = std::clamp(base_trust[i], params.clamp, 1.0 - params.clamp);
        field.set_unary(i, 1.0 - tau, tau);
    }
    for (const auto& p : pairs) {
        if (p.s < params.edge_threshold) continue;
        double a = params.coupling * p.s;
        PairTable psi{{{std::exp(a * params.false_pair_factor), std::exp(-a)}, {std::exp(-a), std::exp(a)}}};
        field.add_edge(p.i, p.j, psi);
    }
    return field;
}

}  // namespace truthdiscover
