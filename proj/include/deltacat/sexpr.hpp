#pragma once

#include <deltacat/errors.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace deltacat {

/// S-expression with source location. `(..)` lists, `[..]` brackets (stream
/// prefixes) and `{..}` braces (module elements) are kept distinct.
struct SExpr {
    enum class Kind { atom, list, bracket, brace };

    Kind kind = Kind::atom;
    std::string text;
    std::vector<SExpr> items;
    std::size_t line = 1;
    std::size_t col = 1;

    bool is_atom() const noexcept { return kind == Kind::atom; }
    bool is_list() const noexcept { return kind == Kind::list; }

    /// Head symbol of a list, or empty.
    std::string_view head() const {
        if (kind != Kind::list || items.empty() || !items.front().is_atom()) return {};
        return items.front().text;
    }

    std::string to_string() const {
        if (kind == Kind::atom) return text;
        const char* open = kind == Kind::list ? "(" : kind == Kind::bracket ? "[" : "{";
        const char* close = kind == Kind::list ? ")" : kind == Kind::bracket ? "]" : "}";
        std::string out = open;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) out += ' ';
            out += items[i].to_string();
        }
        return out + close;
    }
};

class SExprReader {
public:
    explicit SExprReader(std::string_view src) : src_(src) {}

    std::vector<SExpr> read_all() {
        std::vector<SExpr> out;
        skip_space();
        while (pos_ < src_.size()) {
            out.push_back(read());
            skip_space();
        }
        return out;
    }

    /// Exactly one expression, nothing trailing.
    SExpr read_one() {
        skip_space();
        if (pos_ >= src_.size()) throw SyntaxError("empty input", line_, col_);
        SExpr e = read();
        skip_space();
        if (pos_ < src_.size()) throw SyntaxError("trailing input", line_, col_);
        return e;
    }

private:
    SExpr read() {
        SExpr e;
        e.line = line_;
        e.col = col_;
        const char c = src_[pos_];
        if (c == '(' || c == '[' || c == '{') {
            const char close = c == '(' ? ')' : c == '[' ? ']' : '}';
            e.kind = c == '(' ? SExpr::Kind::list : c == '[' ? SExpr::Kind::bracket : SExpr::Kind::brace;
            advance();
            skip_space();
            while (pos_ < src_.size() && src_[pos_] != close) {
                if (is_close(src_[pos_]))
                    throw SyntaxError(std::string("mismatched '") + src_[pos_] + "'", line_, col_);
                e.items.push_back(read());
                skip_space();
            }
            if (pos_ >= src_.size())
                throw SyntaxError(std::string("unterminated '") + c + "'", e.line, e.col);
            advance();
            return e;
        }
        if (is_close(c)) throw SyntaxError(std::string("unexpected '") + c + "'", line_, col_);
        while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
               !is_open(src_[pos_]) && !is_close(src_[pos_]) && src_[pos_] != ';') {
            e.text += src_[pos_];
            advance();
        }
        return e;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (src_[pos_] == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    static bool is_open(char c) { return c == '(' || c == '[' || c == '{'; }
    static bool is_close(char c) { return c == ')' || c == ']' || c == '}'; }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace deltacat
