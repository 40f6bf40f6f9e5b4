#pragma once

#include <deltacat/errors.hpp>
#include <deltacat/obj_type.hpp>
#include <deltacat/rng.hpp>
#include <deltacat/sexpr.hpp>
#include <deltacat/term.hpp>
#include <deltacat/value.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace deltacat {

/// Leaf-level arithmetic of a model: the abelian monoid on each base object,
/// the value-level ε, equality, sampling and literal parsing.
class Algebra {
public:
    virtual ~Algebra() = default;

    virtual std::vector<std::string> bases() const = 0;
    virtual Leaf zero(const std::string& base) const = 0;
    virtual Leaf add(const Leaf& a, const Leaf& b) const = 0;
    virtual Leaf neg(const Leaf&) const { throw NoNegation("base objects of this model have no negation"); }
    virtual Leaf eps(const Leaf& a) const = 0;
    virtual bool equal(const Leaf& a, const Leaf& b) const = 0;
    virtual bool accepts(const std::string& base, const Leaf& l) const = 0;
    virtual Leaf sample(const std::string& base, Rng& rng) const = 0;
    virtual Leaf parse(const std::string& base, const SExpr& e) const = 0;

    /// Head of `head_src` spliced onto the tail of `tail_src` (stream models).
    virtual Leaf splice_head(const Leaf&, const Leaf&) const {
        throw Error("splice_head is only defined for stream leaves");
    }

    /// "exact" or a description of the tolerance in force.
    virtual std::string comparison_mode() const { return "exact"; }
};

struct Primitive {
    std::string name;
    ObjType dom;
    ObjType cod;
    std::function<Value(const Value&)> evaluate;
    /// Symbolic derivative dom×dom → cod, if the model supplies one.
    std::optional<MapTerm> derivative;
    /// Ground truth used to build the linear generator pool.
    bool linear = false;
    /// Excluded primitives are registered but never drawn by the generator.
    bool in_pool = true;
};

/// How a formal Diff node is evaluated.
enum class DiffRule {
    symbolic,          // expand with derive() and evaluate (smooth)
    finite_difference, // g(x+y) - g(x)
    linear,            // g(y) (module morphisms)
    stream             // head: g(a+b)_0 - g(a)_0, tail: g(a+z(b)) - g(a)
};

/// Shape of ε, used to decide which model-specific laws apply.
enum class EpsKind { zero, identity, scalar, truncation };

/// A semantic backend. Immutable once its primitives are registered.
class Model {
public:
    Model(std::string name, std::string family, std::shared_ptr<const Algebra> algebra, DiffRule rule,
          EpsKind eps_kind)
        : name_(std::move(name)), family_(std::move(family)), algebra_(std::move(algebra)), rule_(rule),
          eps_kind_(eps_kind) {}

    const std::string& name() const noexcept { return name_; }
    const std::string& family() const noexcept { return family_; }
    DiffRule diff_rule() const noexcept { return rule_; }
    EpsKind eps_kind() const noexcept { return eps_kind_; }
    const Algebra& algebra() const noexcept { return *algebra_; }
    bool exact() const { return algebra_->comparison_mode() == "exact"; }

    std::vector<std::string> bases() const { return algebra_->bases(); }
    bool has_base(const std::string& name) const {
        for (const auto& b : algebra_->bases())
            if (b == name) return true;
        return false;
    }
    ObjType base() const { return ObjType::base(algebra_->bases().front()); }

    /// Adds a primitive. The derivative term, if any, must have type dom×dom → cod.
    Model& register_prim(Primitive p) {
        if (prims_.count(p.name)) throw DuplicatePrimitive(p.name);
        if (p.derivative) {
            if (!(p.derivative->dom() == square(p.dom)) || !(p.derivative->cod() == p.cod))
                throw TypeMismatch("derivative of '" + p.name + "' must have type " + square(p.dom).to_string() +
                                   " -> " + p.cod.to_string());
        }
        order_.push_back(p.name);
        prims_.emplace(p.name, std::move(p));
        return *this;
    }

    const Primitive* find_prim(const std::string& name) const {
        auto it = prims_.find(name);
        return it == prims_.end() ? nullptr : &it->second;
    }

    const Primitive& prim(const std::string& name) const {
        if (const auto* p = find_prim(name)) return *p;
        throw UnknownPrimitive(name);
    }

    /// Term referring to a registered primitive.
    MapTerm prim_term(const std::string& name) const {
        const auto& p = prim(name);
        return mk_prim(p.name, p.dom, p.cod);
    }

    /// Primitives in registration order.
    std::vector<const Primitive*> primitives() const {
        std::vector<const Primitive*> out;
        for (const auto& n : order_) out.push_back(&prims_.at(n));
        return out;
    }

    // ---- value-level structure, recursing over the object tree ------------

    Value zero(const ObjType& obj) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit: return Value::unit();
        case ObjType::Kind::base: return Value::leaf(algebra_->zero(obj.name()));
        case ObjType::Kind::prod: return Value::pair(zero(obj.left()), zero(obj.right()));
        }
        return {};
    }

    Value add(const ObjType& obj, const Value& a, const Value& b) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit: return Value::unit();
        case ObjType::Kind::base: return Value::leaf(algebra_->add(a.as_leaf(), b.as_leaf()));
        case ObjType::Kind::prod:
            return Value::pair(add(obj.left(), a.first(), b.first()), add(obj.right(), a.second(), b.second()));
        }
        return {};
    }

    Value neg(const ObjType& obj, const Value& a) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit: return Value::unit();
        case ObjType::Kind::base: return Value::leaf(algebra_->neg(a.as_leaf()));
        case ObjType::Kind::prod: return Value::pair(neg(obj.left(), a.first()), neg(obj.right(), a.second()));
        }
        return {};
    }

    Value sub(const ObjType& obj, const Value& a, const Value& b) const { return add(obj, a, neg(obj, b)); }

    /// Value-level ε, applied leafwise.
    Value eps(const ObjType& obj, const Value& a) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit: return Value::unit();
        case ObjType::Kind::base: return Value::leaf(algebra_->eps(a.as_leaf()));
        case ObjType::Kind::prod: return Value::pair(eps(obj.left(), a.first()), eps(obj.right(), a.second()));
        }
        return {};
    }

    Value splice_head(const ObjType& obj, const Value& head, const Value& tail) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit: return Value::unit();
        case ObjType::Kind::base: return Value::leaf(algebra_->splice_head(head.as_leaf(), tail.as_leaf()));
        case ObjType::Kind::prod:
            return Value::pair(splice_head(obj.left(), head.first(), tail.first()),
                               splice_head(obj.right(), head.second(), tail.second()));
        }
        return {};
    }

    bool equal(const ObjType& obj, const Value& a, const Value& b) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit: return true;
        case ObjType::Kind::base: return algebra_->equal(a.as_leaf(), b.as_leaf());
        case ObjType::Kind::prod:
            return equal(obj.left(), a.first(), b.first()) && equal(obj.right(), a.second(), b.second());
        }
        return false;
    }

    Value sample(const ObjType& obj, Rng& rng) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit: return Value::unit();
        case ObjType::Kind::base: return Value::leaf(algebra_->sample(obj.name(), rng));
        case ObjType::Kind::prod: {
            Value l = sample(obj.left(), rng);
            return Value::pair(std::move(l), sample(obj.right(), rng));
        }
        }
        return {};
    }

    /// Throws ShapeMismatch unless `v` is a point of `obj`.
    void check_shape(const ObjType& obj, const Value& v) const {
        switch (obj.kind()) {
        case ObjType::Kind::unit:
            if (!v.is_unit()) throw ShapeMismatch("expected () for unit, got " + v.to_string());
            return;
        case ObjType::Kind::base:
            if (!v.is_leaf() || !algebra_->accepts(obj.name(), v.as_leaf()))
                throw ShapeMismatch("expected a value of " + obj.to_string() + ", got " + v.to_string());
            return;
        case ObjType::Kind::prod:
            if (!v.is_pair())
                throw ShapeMismatch("expected a pair for " + obj.to_string() + ", got " + v.to_string());
            check_shape(obj.left(), v.first());
            check_shape(obj.right(), v.second());
            return;
        }
    }

    /// Parses a point literal against `obj`. A parenthesized single item is
    /// grouping, so `(1)` and `1` denote the same base value.
    Value parse_value(const ObjType& obj, const SExpr& e) const {
        if (e.is_list() && e.items.size() == 1) return parse_value(obj, e.items.front());
        switch (obj.kind()) {
        case ObjType::Kind::unit:
            if (e.is_list() && e.items.empty()) return Value::unit();
            throw SyntaxError("expected () for unit", e.line, e.col);
        case ObjType::Kind::base:
            if (!has_base(obj.name())) throw ShapeMismatch("unknown base object " + obj.name());
            return Value::leaf(algebra_->parse(obj.name(), e));
        case ObjType::Kind::prod:
            if (!e.is_list() || e.items.size() != 2)
                throw SyntaxError("expected a pair literal for " + obj.to_string(), e.line, e.col);
            return Value::pair(parse_value(obj.left(), e.items[0]), parse_value(obj.right(), e.items[1]));
        }
        return {};
    }

private:
    std::string name_;
    std::string family_;
    std::shared_ptr<const Algebra> algebra_;
    DiffRule rule_;
    EpsKind eps_kind_;
    std::map<std::string, Primitive> prims_;
    std::vector<std::string> order_;
};

// ---- helpers for writing primitive evaluators ------------------------------

inline const Integer& as_int(const Value& v) {
    const auto* i = std::get_if<Integer>(&v.as_leaf());
    if (!i) throw ShapeMismatch("expected an integer, got " + v.to_string());
    return *i;
}

inline const StreamPrefix& as_stream(const Value& v) {
    const auto* s = std::get_if<StreamPrefix>(&v.as_leaf());
    if (!s) throw ShapeMismatch("expected a stream prefix, got " + v.to_string());
    return *s;
}

inline const ModElem& as_mod(const Value& v) {
    const auto* m = std::get_if<ModElem>(&v.as_leaf());
    if (!m) throw ShapeMismatch("expected a module element, got " + v.to_string());
    return *m;
}

inline Integer parse_integer(const SExpr& e) {
    if (!e.is_atom() || e.text.empty()) throw SyntaxError("expected an integer", e.line, e.col);
    std::size_t i = (e.text[0] == '-' || e.text[0] == '+') ? 1 : 0;
    if (i == e.text.size()) throw SyntaxError("expected an integer, got '" + e.text + "'", e.line, e.col);
    for (; i < e.text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(e.text[i])))
            throw SyntaxError("expected an integer, got '" + e.text + "'", e.line, e.col);
    return Integer(e.text[0] == '+' ? e.text.substr(1) : e.text);
}

} // namespace deltacat
