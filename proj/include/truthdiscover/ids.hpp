#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace truthdiscover {

/// String-backed identifier with a phantom tag so that entity, predicate and
/// source ids cannot be mixed up.
template <class Tag>
class StrongId {
public:
    StrongId() = default;
    explicit StrongId(std::string value) : value_(std::move(value)) {}

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    friend auto operator<=>(const StrongId&, const StrongId&) = default;
    friend bool operator==(const StrongId&, const StrongId&) = default;

    friend std::ostream& operator<<(std::ostream& os, const StrongId& id) { return os << id.value_; }

private:
    std::string value_;
};

struct EntityTag {};
struct PredicateTag {};
struct SourceTag {};

using EntityClusterId = StrongId<EntityTag>;
using PredicateId = StrongId<PredicateTag>;
using SourceId = StrongId<SourceTag>;

}  // namespace truthdiscover

template <class Tag>
struct std::hash<truthdiscover::StrongId<Tag>> {
    std::size_t operator()(const truthdiscover::StrongId<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
