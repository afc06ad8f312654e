#pragma once

#include <string_view>

#include "truthdiscover/value.hpp"

namespace truthdiscover {

struct SimilarityConfig {
    double numeric_floor = 1e-12;
    double cross_kind_similarity = 0.0;

    void validate() const;
};

/// Similarity in [0, 1], symmetric, 1 on identical values.
///  - numbers: 1 - min(1, |a - b| / (|a| + |b| + floor))
///  - dates: fraction of year/month/day that agree, a wildcard agreeing with anything
///  - text: 1 - edit distance / longer length, on ASCII case-folded code points
///  - references: 1 when equal, else 0
///  - different kinds: cross_kind_similarity
double similarity(const NormalizedValue& a, const NormalizedValue& b, const SimilarityConfig& cfg = {});

/// Levenshtein distance over UTF-8 code points.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace truthdiscover
