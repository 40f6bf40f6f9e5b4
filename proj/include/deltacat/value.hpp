#pragma once

#include <deltacat/errors.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace deltacat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of a free module ℕⁿ.
struct ModElem {
    std::vector<Integer> coords;
    friend bool operator==(const ModElem&, const ModElem&) = default;
};

/// Length-N prefix of an integer stream.
struct StreamPrefix {
    std::vector<Integer> terms;
    friend bool operator==(const StreamPrefix&, const StreamPrefix&) = default;
};

using Leaf = std::variant<Integer, double, Rational, ModElem, StreamPrefix>;

/// A point of an ObjType: unit, a base leaf, or a pair. Copies are cheap and
/// share structure.
class Value {
public:
    Value() = default;

    static Value unit() { return Value(); }
    static Value leaf(Leaf l) { return Value(Rep(std::move(l))); }
    static Value pair(Value a, Value b) {
        return Value(Rep(std::make_shared<const std::pair<Value, Value>>(std::move(a), std::move(b))));
    }

    bool is_unit() const noexcept { return std::holds_alternative<std::monostate>(rep_); }
    bool is_leaf() const noexcept { return std::holds_alternative<Leaf>(rep_); }
    bool is_pair() const noexcept { return std::holds_alternative<PairPtr>(rep_); }

    const Leaf& as_leaf() const {
        if (!is_leaf()) throw ShapeMismatch("expected a base value, got " + to_string());
        return std::get<Leaf>(rep_);
    }
    const Value& first() const { return pair_ref().first; }
    const Value& second() const { return pair_ref().second; }

    /// Literal form: `()`, `(v w)`, integers, decimals, `p/q`, `{1 2}`, `[1 2 3]`.
    std::string to_string() const {
        std::string out;
        render(out);
        return out;
    }

private:
    using PairPtr = std::shared_ptr<const std::pair<Value, Value>>;
    using Rep = std::variant<std::monostate, Leaf, PairPtr>;

    explicit Value(Rep rep) : rep_(std::move(rep)) {}

    const std::pair<Value, Value>& pair_ref() const {
        if (!is_pair()) throw ShapeMismatch("expected a pair, got " + to_string());
        return *std::get<PairPtr>(rep_);
    }

    void render(std::string& out) const;

    Rep rep_;
};

inline std::string format_real(double d) {
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

inline std::string leaf_to_string(const Leaf& l) {
    struct Visitor {
        std::string operator()(const Integer& i) const { return i.str(); }
        std::string operator()(double d) const { return format_real(d); }
        std::string operator()(const Rational& r) const {
            if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
            return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
        }
        std::string operator()(const ModElem& m) const { return join('{', m.coords, '}'); }
        std::string operator()(const StreamPrefix& s) const { return join('[', s.terms, ']'); }

        static std::string join(char open, const std::vector<Integer>& xs, char close) {
            std::string out(1, open);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i) out += ' ';
                out += xs[i].str();
            }
            out += close;
            return out;
        }
    };
    return std::visit(Visitor{}, l);
}

inline void Value::render(std::string& out) const {
    if (is_unit()) {
        out += "()";
    } else if (is_leaf()) {
        out += leaf_to_string(std::get<Leaf>(rep_));
    } else {
        out += '(';
        first().render(out);
        out += ' ';
        second().render(out);
        out += ')';
    }
}

/// Convenience constructors used throughout tests and model definitions.
inline Value int_value(long long v) { return Value::leaf(Integer(v)); }
inline Value real_value(double v) { return Value::leaf(v); }
inline Value stream_value(std::vector<Integer> terms) { return Value::leaf(StreamPrefix{std::move(terms)}); }
inline Value mod_value(std::vector<Integer> coords) { return Value::leaf(ModElem{std::move(coords)}); }

} // namespace deltacat
