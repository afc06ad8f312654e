#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "truthdiscover/graph.hpp"
#include "truthdiscover/markov_field.hpp"

namespace oracle {

/// Exact marginals P(y_i = 1) by summing the joint over all 2^m labelings.
inline std::vector<double> enumerate_marginals(const truthdiscover::MarkovField& f) {
    const std::size_t m = f.size();
    std::vector<double> p1(m, 0.0);
    double z = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        auto label = [&](std::size_t i) { return static_cast<int>((mask >> i) & 1U); };
        double w = 1.0;
        for (std::size_t i = 0; i < m; ++i) w *= f.unary(i)[label(i)];
        for (const auto& e : f.edges()) w *= e.psi[label(e.i)][label(e.j)];
        z += w;
        for (std::size_t i = 0; i < m; ++i) {
            if (label(i)) p1[i] += w;
        }
    }
    for (auto& p : p1) p /= z;
    return p1;
}

/// Solves BR = (1 - d) + d * W BR directly by Gaussian elimination with
/// partial pivoting; W[w][l] = L(l, w) / C(l).
inline std::map<truthdiscover::SourceId, double> solve_prior(const truthdiscover::SourceBeliefGraph& sbg, double d) {
    std::vector<truthdiscover::SourceId> ids(sbg.vertices().begin(), sbg.vertices().end());
    const std::size_t n = ids.size();
    std::map<truthdiscover::SourceId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[ids[i]] = i;
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 1.0;
        a[i][n] = 1.0 - d;
    }
    for (const auto& [pair, count] : sbg.edges()) {
        std::size_t l = index[pair.first];
        std::size_t w = index[pair.second];
        a[w][l] -= d * static_cast<double>(count) / static_cast<double>(sbg.out_degree(pair.first));
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a[r][c] / a[c][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::map<truthdiscover::SourceId, double> br;
    for (std::size_t i = 0; i < n; ++i) br[ids[i]] = a[i][n] / a[i][i];
    return br;
}

}  // namespace oracle
