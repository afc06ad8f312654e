#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "truthdiscover/rdf.hpp"

namespace truthdiscover {

/// Statements of one or more parsed files, merged in input order, with the
/// file each one came from.
struct Corpus {
    std::vector<std::string> files;
    std::vector<RdfStatement> statements;
    std::vector<std::uint32_t> origin;

    void append(std::string label, std::vector<RdfStatement> sts) {
        auto idx = static_cast<std::uint32_t>(files.size());
        files.push_back(std::move(label));
        origin.insert(origin.end(), sts.size(), idx);
        statements.insert(statements.end(), std::make_move_iterator(sts.begin()), std::make_move_iterator(sts.end()));
    }

    std::string_view file_of(std::size_t statement) const {
        return origin.empty() ? std::string_view("<input>") : std::string_view(files[origin[statement]]);
    }

    static Corpus single(std::vector<RdfStatement> sts, std::string label = "<input>") {
        Corpus c;
        c.append(std::move(label), std::move(sts));
        return c;
    }
};

}  // namespace truthdiscover
