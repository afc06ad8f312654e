#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "truthdiscover/rdf.hpp"

namespace truthdiscover {

/// Declaration order is also the canonical cross-kind ordering.
enum class ValueKind { Number = 0, Date = 1, Text = 2, Reference = 3 };

std::string_view kind_name(ValueKind k) noexcept;

/// Calendar date whose month and day may be unknown ("1886-#-#").
/// A concrete day never appears with a wildcard month.
struct PartialDate {
    int year = 0;
    std::optional<int> month;
    std::optional<int> day;

    friend auto operator<=>(const PartialDate&, const PartialDate&) = default;
    friend bool operator==(const PartialDate&, const PartialDate&) = default;
};

/// A literal or IRI object reduced to a comparable form. Equality of two
/// values is exactly equality of their kind and payload, which is also the
/// grouping key for conflict sets.
class NormalizedValue {
public:
    static NormalizedValue number(double v);
    static NormalizedValue date(PartialDate d);
    static NormalizedValue text(std::string s);
    static NormalizedValue reference(std::string iri);

    ValueKind kind() const noexcept { return static_cast<ValueKind>(payload_.index()); }

    double as_number() const { return std::get<0>(payload_); }
    const PartialDate& as_date() const { return std::get<1>(payload_); }
    const std::string& as_text() const { return std::get<2>(payload_).s; }
    const std::string& as_reference() const { return std::get<3>(payload_).s; }

    friend bool operator==(const NormalizedValue& a, const NormalizedValue& b) { return a.payload_ == b.payload_; }
    /// Number < Date < Text < Reference, then natural order inside a kind.
    friend bool operator<(const NormalizedValue& a, const NormalizedValue& b) { return a.payload_ < b.payload_; }

private:
    struct Text {
        std::string s;
        friend auto operator<=>(const Text&, const Text&) = default;
    };
    struct Ref {
        std::string s;
        friend auto operator<=>(const Ref&, const Ref&) = default;
    };

    using Payload = std::variant<double, PartialDate, Text, Ref>;
    explicit NormalizedValue(Payload p) : payload_(std::move(p)) {}

    Payload payload_;
};

/// Canonical rendering of the payload. Injective within one kind.
std::string render(const NormalizedValue& v);
/// `kind:payload`, injective across kinds (used in gold files).
std::string render_tagged(const NormalizedValue& v);
std::optional<NormalizedValue> parse_tagged(std::string_view s);

/// Literal normalization. Returns nullopt for NULL or empty literals, which
/// carry no claim.
std::optional<NormalizedValue> normalize_object(std::string_view lexical, std::string_view datatype = {});
/// Term normalization: IRIs become references, blank nodes yield nothing.
std::optional<NormalizedValue> normalize_term(const Term& term);

/// A term that normalizes back to `v`.
Term to_term(const NormalizedValue& v);

bool is_numeric_datatype(std::string_view datatype) noexcept;

/// Number of days in the given month, honoring Gregorian leap years.
int days_in_month(int year, int month) noexcept;

}  // namespace truthdiscover
