#include "truthdiscover/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace truthdiscover {

namespace {

std::vector<char32_t> code_points(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 1;
        char32_t cp = len == 1 ? c : c & (0xFF >> (len + 1));
        for (std::size_t k = 1; k < len && i + k < s.size(); ++k) {
            cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        }
        if (cp >= 'A' && cp <= 'Z') cp += 'a' - 'A';
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::size_t levenshtein(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

bool component_matches(const std::optional<int>& a, const std::optional<int>& b) { return !a || !b || *a == *b; }

}  // namespace

void SimilarityConfig::validate() const {
    if (!(numeric_floor > 0.0)) throw std::invalid_argument("numeric floor must be positive");
    if (!(cross_kind_similarity >= 0.0 && cross_kind_similarity <= 1.0)) {
        throw std::invalid_argument("cross-kind similarity must lie in [0, 1]");
    }
}

std::size_t edit_distance(std::string_view a, std::string_view b) { return levenshtein(code_points(a), code_points(b)); }

double similarity(const NormalizedValue& a, const NormalizedValue& b, const SimilarityConfig& cfg) {
    if (a.kind() != b.kind()) return cfg.cross_kind_similarity;
    switch (a.kind()) {
        case ValueKind::Number: {
            double x = a.as_number();
            double y = b.as_number();
            double rel = std::abs(x - y) / (std::abs(x) + std::abs(y) + cfg.numeric_floor);
            return 1.0 - std::min(1.0, rel);
        }
        case ValueKind::Date: {
            const auto& x = a.as_date();
            const auto& y = b.as_date();
            int matches = (x.year == y.year) + component_matches(x.month, y.month) + component_matches(x.day, y.day);
            return matches / 3.0;
        }
        case ValueKind::Text: {
            auto x = code_points(a.as_text());
            auto y = code_points(b.as_text());
            std::size_t longest = std::max(x.size(), y.size());
            if (longest == 0) return 1.0;
            return 1.0 - static_cast<double>(levenshtein(x, y)) / static_cast<double>(longest);
        }
        case ValueKind::Reference: return a.as_reference() == b.as_reference() ? 1.0 : 0.0;
    }
    return 0.0;
}

}  // namespace truthdiscover
