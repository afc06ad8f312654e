#include "truthdiscover/rdf.hpp"

#include <zlib.h>

#include <cctype>
#include <cstdio>

#include <fstream>
#include <istream>
#include <sstream>

namespace truthdiscover {

namespace {

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line_no) : text_(text), line_(line_no) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& reason) const {
        throw MalformedLine(line_, reason + " at column " + std::to_string(pos_ + 1));
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string iri() {
        expect('<');
        std::string out;
        while (true) {
            if (at_end()) fail("unterminated IRI");
            char c = text_[pos_++];
            if (c == '>') break;
            if (c == '\\') {
                out += unicode_escape();
                continue;
            }
            if (c == ' ' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
                c == '`' || static_cast<unsigned char>(c) < 0x20) {
                fail("illegal character in IRI");
            }
            out.push_back(c);
        }
        if (!is_absolute_iri(out)) fail("relative IRI <" + out + ">");
        return out;
    }

    std::string blank_label() {
        expect('_');
        expect(':');
        std::size_t start = pos_;
        while (!at_end()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '<' || c == '"') break;
            if (c == '.' && (pos_ + 1 >= text_.size() || text_[pos_ + 1] == ' ' || text_[pos_ + 1] == '\t')) break;
            ++pos_;
        }
        if (pos_ == start) fail("empty blank node label");
        return std::string(text_.substr(start, pos_ - start));
    }

    Term literal() {
        expect('"');
        std::string lex;
        while (true) {
            if (at_end()) fail("unterminated literal");
            char c = text_[pos_++];
            if (c == '"') break;
            if (c == '\\') {
                if (at_end()) fail("dangling escape");
                char e = text_[pos_];
                switch (e) {
                    case 't': lex.push_back('\t'); ++pos_; break;
                    case 'b': lex.push_back('\b'); ++pos_; break;
                    case 'n': lex.push_back('\n'); ++pos_; break;
                    case 'r': lex.push_back('\r'); ++pos_; break;
                    case 'f': lex.push_back('\f'); ++pos_; break;
                    case '"': lex.push_back('"'); ++pos_; break;
                    case '\'': lex.push_back('\''); ++pos_; break;
                    case '\\': lex.push_back('\\'); ++pos_; break;
                    case 'u':
                    case 'U': lex += unicode_escape(); break;
                    default: fail("unknown escape");
                }
                continue;
            }
            lex.push_back(c);
        }
        std::string datatype;
        std::string lang;
        if (peek() == '^') {
            ++pos_;
            expect('^');
            datatype = iri();
        } else if (peek() == '@') {
            ++pos_;
            std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) ++pos_;
            if (pos_ == start) fail("empty language tag");
            lang = std::string(text_.substr(start, pos_ - start));
        }
        return Term::literal(std::move(lex), std::move(datatype), std::move(lang));
    }

    Term term() {
        switch (peek()) {
            case '<': return Term::iri(iri());
            case '_': return Term::blank(blank_label());
            case '"': return literal();
            default: fail("expected IRI, blank node or literal");
        }
    }

private:
    // Called with pos_ on the 'u' / 'U' following a backslash.
    std::string unicode_escape() {
        if (at_end()) fail("dangling escape");
        char kind = text_[pos_++];
        int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
        if (digits == 0) fail("invalid escape in IRI");
        if (pos_ + digits > text_.size()) fail("truncated unicode escape");
        char32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            int h = hex_value(text_[pos_ + i]);
            if (h < 0) fail("invalid unicode escape");
            cp = (cp << 4) | static_cast<char32_t>(h);
        }
        pos_ += digits;
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point");
        std::string out;
        append_utf8(out, cp);
        return out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

void escape_into(std::string& out, std::string_view s, bool in_iri) {
    for (char c : s) {
        if (in_iri) {
            if (c == '>' || c == '\\' || static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
                c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
                char buf[11];
                std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(static_cast<unsigned char>(c)));
                out += buf;
            } else {
                out.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[11];
                    std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
}

std::string read_gzip(const std::string& path) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (f == nullptr) throw std::runtime_error("cannot open " + path);
    std::string data;
    char buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(n));
    int err = 0;
    const char* msg = gzerror(f, &err);
    bool failed = n < 0 || (err != Z_OK && err != Z_STREAM_END);
    std::string reason = failed ? std::string(msg) : std::string();
    gzclose(f);
    if (failed) throw std::runtime_error("gzip error in " + path + ": " + reason);
    return data;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

MalformedLine::MalformedLine(std::size_t line, std::string reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}

EncodingError::EncodingError(std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": invalid UTF-8"), line_(line) {}

std::string format_diagnostic(const Diagnostic& d) {
    return "WARN " + d.file + ":" + std::to_string(d.line) + " " + d.reason;
}

bool is_absolute_iri(std::string_view iri) noexcept {
    if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        char c = iri[i];
        if (c == ':') return true;
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

bool is_valid_utf8(std::string_view s) noexcept {
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len;
        char32_t cp;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        // overlong forms, surrogates, out of range
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF)) {
            return false;
        }
        i += len;
    }
    return true;
}

std::optional<RdfStatement> parse_line(std::string_view line, RdfFormat format, std::size_t line_no) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineCursor cur(line, line_no);
    cur.skip_ws();
    if (cur.at_end() || cur.peek() == '#') return std::nullopt;

    RdfStatement st;
    st.line = line_no;
    if (cur.peek() == '_') cur.fail("blank node subject is not supported");
    st.subject = cur.iri();
    cur.skip_ws();
    st.predicate = cur.iri();
    cur.skip_ws();
    st.object = cur.term();
    cur.skip_ws();
    if (format == RdfFormat::NQuads && cur.peek() != '.') {
        if (cur.peek() == '<') {
            st.graph = cur.iri();
        } else if (cur.peek() == '_') {
            st.graph = "_:" + cur.blank_label();
        } else {
            cur.fail("expected graph label or '.'");
        }
        cur.skip_ws();
    }
    cur.expect('.');
    cur.skip_ws();
    if (!cur.at_end() && cur.peek() != '#') cur.fail("trailing content after '.'");
    return st;
}

void parse_stream(std::istream& in, RdfFormat format, ParseMode mode, std::string_view label,
                  const StatementSink& sink, const DiagnosticSink& diag) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!is_valid_utf8(line)) {
            if (mode == ParseMode::Strict) throw EncodingError(line_no);
            if (diag) diag({std::string(label), line_no, "invalid UTF-8"});
            continue;
        }
        try {
            if (auto st = parse_line(line, format, line_no)) sink(std::move(*st));
        } catch (const MalformedLine& e) {
            if (mode == ParseMode::Strict) throw;
            if (diag) diag({std::string(label), e.line(), e.reason()});
        }
    }
}

ParseResult parse_triples(std::istream& in, RdfFormat format, ParseMode mode, std::string_view label) {
    ParseResult result;
    parse_stream(
        in, format, mode, label, [&](RdfStatement&& st) { result.statements.push_back(std::move(st)); },
        [&](Diagnostic&& d) { result.diagnostics.push_back(std::move(d)); });
    return result;
}

ParseResult parse_triples(std::string_view text, RdfFormat format, ParseMode mode, std::string_view label) {
    std::istringstream in{std::string(text)};
    return parse_triples(in, format, mode, label);
}

RdfFormat format_for_path(std::string_view path) noexcept {
    if (ends_with(path, ".gz")) path.remove_suffix(3);
    return ends_with(path, ".nq") ? RdfFormat::NQuads : RdfFormat::NTriples;
}

ParseResult parse_file(const std::string& path, ParseMode mode, std::optional<RdfFormat> format) {
    RdfFormat fmt = format.value_or(format_for_path(path));
    if (ends_with(path, ".gz")) {
        std::istringstream in(read_gzip(path));
        return parse_triples(in, fmt, mode, path);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_triples(in, fmt, mode, path);
}

std::string to_ntriples(const Term& term) {
    std::string out;
    switch (term.kind) {
        case Term::Kind::Iri:
            out.push_back('<');
            escape_into(out, term.value, true);
            out.push_back('>');
            break;
        case Term::Kind::Blank:
            out = "_:" + term.value;
            break;
        case Term::Kind::Literal:
            out.push_back('"');
            escape_into(out, term.value, false);
            out.push_back('"');
            if (!term.datatype.empty()) {
                out += "^^<";
                escape_into(out, term.datatype, true);
                out.push_back('>');
            } else if (!term.lang.empty()) {
                out += "@" + term.lang;
            }
            break;
    }
    return out;
}

std::string to_ntriples(const RdfStatement& st) {
    std::string out = to_ntriples(Term::iri(st.subject));
    out += ' ';
    out += to_ntriples(Term::iri(st.predicate));
    out += ' ';
    out += to_ntriples(st.object);
    if (st.graph) {
        out += ' ';
        out += st.graph->starts_with("_:") ? *st.graph : to_ntriples(Term::iri(*st.graph));
    }
    out += " .";
    return out;
}

}  // namespace truthdiscover
