#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deltacat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TypeMismatch : public Error {
public:
    using Error::Error;
};

class UnknownPrimitive : public Error {
public:
    explicit UnknownPrimitive(const std::string& name)
        : Error("unknown primitive '" + name + "'") {}
};

class DuplicatePrimitive : public Error {
public:
    explicit DuplicatePrimitive(const std::string& name)
        : Error("primitive '" + name + "' is already registered") {}
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// A formal difference node reached a primitive with no derivative rule.
class NoSemanticDiff : public Error {
public:
    explicit NoSemanticDiff(const std::string& what)
        : Error("no derivative available for " + what) {}
};

class NoNegation : public Error {
public:
    using Error::Error;
};

class NoGeneratorForType : public Error {
public:
    using Error::Error;
};

class UnknownLaw : public Error {
public:
    explicit UnknownLaw(const std::string& id) : Error("unknown law '" + id + "'") {}
};

class UnknownModel : public Error {
public:
    explicit UnknownModel(const std::string& name) : Error("unknown model '" + name + "'") {}
};

/// Errors tied to a position in source text.
class SourceError : public Error {
public:
    SourceError(const std::string& kind, const std::string& msg, std::size_t line, std::size_t col)
        : Error(line == 0 ? kind + ": " + msg
                          : kind + " at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          kind_(kind), msg_(msg), line_(line), col_(col) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return msg_; }
    /// 0 when the error has no source position.
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return col_; }

private:
    std::string kind_;
    std::string msg_;
    std::size_t line_;
    std::size_t col_;
};

class SyntaxError : public SourceError {
public:
    SyntaxError(const std::string& msg, std::size_t line, std::size_t col)
        : SourceError("syntax error", msg, line, col) {}
};

class UnknownName : public SourceError {
public:
    UnknownName(const std::string& name, std::size_t line, std::size_t col)
        : SourceError("unknown name", "'" + name + "'", line, col) {}
};

/// A TypeMismatch found while elaborating source text.
class SourceTypeMismatch : public SourceError {
public:
    SourceTypeMismatch(const std::string& msg, std::size_t line, std::size_t col)
        : SourceError("type mismatch", msg, line, col) {}
};

} // namespace deltacat
