#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace truthdiscover {

inline constexpr std::string_view kOwlSameAs = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr std::string_view kXsdNamespace = "http://www.w3.org/2001/XMLSchema#";

enum class RdfFormat { NTriples, NQuads };
enum class ParseMode { Strict, Lenient };

/// Object position of a statement: an IRI, a blank node label or a literal.
struct Term {
    enum class Kind { Iri, Blank, Literal };

    Kind kind = Kind::Iri;
    std::string value;     // IRI text, blank node label (without "_:") or literal lexical form
    std::string datatype;  // literal only, empty when absent
    std::string lang;      // literal only, empty when absent

    static Term iri(std::string v) { return {Kind::Iri, std::move(v), {}, {}}; }
    static Term blank(std::string v) { return {Kind::Blank, std::move(v), {}, {}}; }
    static Term literal(std::string v, std::string dt = {}, std::string lang = {}) {
        return {Kind::Literal, std::move(v), std::move(dt), std::move(lang)};
    }

    bool is_iri() const noexcept { return kind == Kind::Iri; }
    bool is_literal() const noexcept { return kind == Kind::Literal; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct RdfStatement {
    std::string subject;
    std::string predicate;
    Term object;
    std::optional<std::string> graph;
    std::size_t line = 0;

    friend bool operator==(const RdfStatement&, const RdfStatement&) = default;
};

struct Diagnostic {
    std::string file;
    std::size_t line = 0;
    std::string reason;
};

/// Renders `WARN <file>:<line> <reason>`.
std::string format_diagnostic(const Diagnostic& d);

class MalformedLine : public std::runtime_error {
public:
    MalformedLine(std::size_t line, std::string reason);
    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class EncodingError : public std::runtime_error {
public:
    explicit EncodingError(std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct ParseResult {
    std::vector<RdfStatement> statements;
    std::vector<Diagnostic> diagnostics;
};

bool is_absolute_iri(std::string_view iri) noexcept;
bool is_valid_utf8(std::string_view bytes) noexcept;

/// Parses one line. Returns nullopt for blank and comment lines.
/// Throws MalformedLine on syntax errors.
std::optional<RdfStatement> parse_line(std::string_view line, RdfFormat format, std::size_t line_no);

using StatementSink = std::function<void(RdfStatement&&)>;
using DiagnosticSink = std::function<void(Diagnostic&&)>;

/// Streams statements in file order. In lenient mode malformed lines are
/// reported through `diag` and skipped; in strict mode the first one throws.
void parse_stream(std::istream& in, RdfFormat format, ParseMode mode, std::string_view label,
                  const StatementSink& sink, const DiagnosticSink& diag);

ParseResult parse_triples(std::istream& in, RdfFormat format, ParseMode mode,
                          std::string_view label = "<input>");
ParseResult parse_triples(std::string_view text, RdfFormat format, ParseMode mode,
                          std::string_view label = "<input>");

/// Reads a file from disk, transparently decompressing `.gz` input. The
/// format is taken from the extension (`.nq`/`.nq.gz` are N-Quads) unless
/// `format` is given.
ParseResult parse_file(const std::string& path, ParseMode mode,
                       std::optional<RdfFormat> format = std::nullopt);

RdfFormat format_for_path(std::string_view path) noexcept;

std::string to_ntriples(const Term& term);
/// One N-Triples (or N-Quads, when a graph is present) line without newline.
std::string to_ntriples(const RdfStatement& st);

}  // namespace truthdiscover
