#include "truthdiscover/value.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace truthdiscover {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {"january", "february", "march",     "april",
                                                          "may",     "june",     "july",      "august",
                                                          "september", "october", "november", "december"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : trim(s)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) return false;
    }
    return true;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool all_hashes(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c != '#') return false;
    }
    return true;
}

std::optional<int> to_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    // from_chars accepts "inf"/"nan"; only plain decimal and exponent forms are numbers here
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != 'e' && c != 'E' && c != '+') {
            return std::nullopt;
        }
    }
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<int> month_from_name(std::string_view s) {
    if (s.size() < 3) return std::nullopt;
    for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
        std::string_view full = kMonthNames[i];
        if (iequals(s, full) || (s.size() == 3 && iequals(s, full.substr(0, 3)))) return static_cast<int>(i) + 1;
    }
    return std::nullopt;
}

/// A date component that is either digits or a run of '#'.
/// Returns {present, value}; value is nullopt for wildcards.
std::optional<std::optional<int>> component(std::string_view s, std::size_t max_digits) {
    if (all_hashes(s)) return std::optional<int>{};
    if (!all_digits(s) || s.size() > max_digits) return std::nullopt;
    return to_int(s);
}

std::optional<PartialDate> make_date(int year, std::optional<int> month, std::optional<int> day) {
    if (month && (*month < 1 || *month > 12)) return std::nullopt;
    if (!month) day.reset();
    if (day && (*day < 1 || *day > days_in_month(year, *month))) return std::nullopt;
    return PartialDate{year, month, day};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// Y-M-D, Y-M, and (for year datatypes) Y. Components may be '#' wildcards.
std::optional<PartialDate> parse_iso(std::string_view s, bool allow_bare_year) {
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    auto parts = split(s, '-');
    if (parts.empty() || parts.size() > 3) return std::nullopt;
    if (!all_digits(parts[0]) || parts[0].size() < 4 || parts[0].size() > 6) return std::nullopt;
    if (parts.size() == 1 && !allow_bare_year) return std::nullopt;
    auto year = to_int(parts[0]);
    if (!year) return std::nullopt;
    std::optional<int> month;
    std::optional<int> day;
    if (parts.size() >= 2) {
        auto m = component(parts[1], 2);
        if (!m) return std::nullopt;
        month = *m;
    }
    if (parts.size() == 3) {
        auto d = component(parts[2], 2);
        if (!d) return std::nullopt;
        day = *d;
    }
    return make_date(negative ? -*year : *year, month, day);
}

// M/D/Y
std::optional<PartialDate> parse_us(std::string_view s) {
    auto parts = split(s, '/');
    if (parts.size() != 3) return std::nullopt;
    auto m = component(parts[0], 2);
    auto d = component(parts[1], 2);
    if (!m || !d || !all_digits(parts[2]) || parts[2].size() != 4) return std::nullopt;
    return make_date(*to_int(parts[2]), *m, *d);
}

// "28 October 1886", "October 28, 1886", "October 1886"
std::optional<PartialDate> parse_named(std::string_view s) {
    std::vector<std::string_view> words;
    for (auto w : split(s, ' ')) {
        if (!w.empty()) words.push_back(w);
    }
    auto year_of = [](std::string_view w) -> std::optional<int> {
        if (!all_digits(w) || w.size() < 3 || w.size() > 4) return std::nullopt;
        return to_int(w);
    };
    if (words.size() == 3) {
        if (auto m = month_from_name(words[1])) {
            auto d = component(words[0], 2);
            auto y = year_of(words[2]);
            if (d && y) return make_date(*y, *m, *d);
        }
        if (auto m = month_from_name(words[0])) {
            std::string_view dw = words[1];
            if (!dw.empty() && dw.back() == ',') dw.remove_suffix(1);
            auto d = component(dw, 2);
            auto y = year_of(words[2]);
            if (d && y) return make_date(*y, *m, *d);
        }
    } else if (words.size() == 2) {
        if (auto m = month_from_name(words[0])) {
            if (auto y = year_of(words[1])) return make_date(*y, *m, std::nullopt);
        }
    }
    return std::nullopt;
}

std::string_view xsd_local(std::string_view datatype) {
    if (datatype.starts_with(kXsdNamespace)) return datatype.substr(kXsdNamespace.size());
    return {};
}

// Drops an xsd timezone suffix ("Z", "+01:00") and a dateTime time part.
std::string_view strip_time(std::string_view s, std::string_view local) {
    if (local == "dateTime") {
        auto t = s.find('T');
        if (t != std::string_view::npos) return s.substr(0, t);
    }
    if (!local.empty()) {
        if (!s.empty() && s.back() == 'Z') return s.substr(0, s.size() - 1);
        if (s.size() > 6 && (s[s.size() - 6] == '+' || s[s.size() - 6] == '-') && s[s.size() - 3] == ':') {
            return s.substr(0, s.size() - 6);
        }
    }
    return s;
}

std::optional<PartialDate> parse_date(std::string_view s, std::string_view datatype) {
    std::string_view local = xsd_local(datatype);
    bool year_type = local == "gYear" || local == "gYearMonth" || local == "date" || local == "dateTime";
    s = strip_time(s, local);
    if (auto d = parse_iso(s, year_type)) return d;
    if (auto d = parse_us(s)) return d;
    return parse_named(s);
}

std::string pad(int v, int width) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%0*d", width, v);
    return buf;
}

}  // namespace

std::string_view kind_name(ValueKind k) noexcept {
    switch (k) {
        case ValueKind::Number: return "number";
        case ValueKind::Date: return "date";
        case ValueKind::Text: return "text";
        case ValueKind::Reference: return "reference";
    }
    return "unknown";
}

NormalizedValue NormalizedValue::number(double v) { return NormalizedValue(Payload(std::in_place_index<0>, v == 0.0 ? 0.0 : v)); }
NormalizedValue NormalizedValue::date(PartialDate d) {
    if (!d.month) d.day.reset();
    return NormalizedValue(Payload(std::in_place_index<1>, d));
}
NormalizedValue NormalizedValue::text(std::string s) { return NormalizedValue(Payload(std::in_place_index<2>, Text{std::move(s)})); }
NormalizedValue NormalizedValue::reference(std::string iri) {
    return NormalizedValue(Payload(std::in_place_index<3>, Ref{std::move(iri)}));
}

int days_in_month(int year, int month) noexcept {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return kDays[month - 1];
}

bool is_numeric_datatype(std::string_view datatype) noexcept {
    static constexpr std::string_view kNumeric[] = {
        "decimal", "integer", "int", "long", "short", "byte", "double", "float",
        "nonNegativeInteger", "positiveInteger", "negativeInteger", "nonPositiveInteger",
        "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte"};
    std::string_view local = xsd_local(datatype);
    if (local.empty()) return false;
    for (auto n : kNumeric) {
        if (local == n) return true;
    }
    return false;
}

std::string render(const NormalizedValue& v) {
    switch (v.kind()) {
        case ValueKind::Number: {
            char buf[64];
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v.as_number());
            return std::string(buf, p);
        }
        case ValueKind::Date: {
            const auto& d = v.as_date();
            std::string out = d.year < 0 ? "-" + pad(-d.year, 4) : pad(d.year, 4);
            out += "-" + (d.month ? pad(*d.month, 2) : std::string("#"));
            out += "-" + (d.day ? pad(*d.day, 2) : std::string("#"));
            return out;
        }
        case ValueKind::Text: return v.as_text();
        case ValueKind::Reference: return v.as_reference();
    }
    return {};
}

std::string render_tagged(const NormalizedValue& v) {
    return std::string(kind_name(v.kind())) + ":" + render(v);
}

std::optional<NormalizedValue> parse_tagged(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::string_view kind = s.substr(0, colon);
    std::string_view body = s.substr(colon + 1);
    if (kind == "number") {
        if (auto n = parse_number(body)) return NormalizedValue::number(*n);
        return std::nullopt;
    }
    if (kind == "date") {
        if (auto d = parse_iso(body, false)) return NormalizedValue::date(*d);
        return std::nullopt;
    }
    if (kind == "text") return NormalizedValue::text(std::string(body));
    if (kind == "reference") return NormalizedValue::reference(std::string(body));
    return std::nullopt;
}

std::optional<NormalizedValue> normalize_object(std::string_view lexical, std::string_view datatype) {
    std::string_view trimmed = trim(lexical);
    if (trimmed.empty() || iequals(trimmed, "null")) return std::nullopt;
    if (is_numeric_datatype(datatype)) {
        if (auto n = parse_number(trimmed)) return NormalizedValue::number(*n);
    }
    if (auto d = parse_date(trimmed, datatype)) return NormalizedValue::date(*d);
    return NormalizedValue::text(collapse_whitespace(trimmed));
}

std::optional<NormalizedValue> normalize_term(const Term& term) {
    switch (term.kind) {
        case Term::Kind::Iri: return NormalizedValue::reference(term.value);
        case Term::Kind::Blank: return std::nullopt;
        case Term::Kind::Literal: return normalize_object(term.value, term.datatype);
    }
    return std::nullopt;
}

Term to_term(const NormalizedValue& v) {
    switch (v.kind()) {
        case ValueKind::Number: return Term::literal(render(v), std::string(kXsdNamespace) + "double");
        case ValueKind::Date: {
            const auto& d = v.as_date();
            if (d.month && d.day) return Term::literal(render(v), std::string(kXsdNamespace) + "date");
            return Term::literal(render(v));
        }
        case ValueKind::Text: return Term::literal(v.as_text());
        case ValueKind::Reference: return Term::iri(v.as_reference());
    }
    return {};
}

}  // namespace truthdiscover
