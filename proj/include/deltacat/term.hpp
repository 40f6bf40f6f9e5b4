#pragma once

#include <deltacat/errors.hpp>
#include <deltacat/obj_type.hpp>

#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

namespace deltacat {

enum class Op { id, proj0, proj1, pair, comp, plus, zero, bang, eps, diff, prim };

inline std::string_view op_name(Op op) {
    switch (op) {
    case Op::id: return "id";
    case Op::proj0: return "p0";
    case Op::proj1: return "p1";
    case Op::pair: return "pair";
    case Op::comp: return "comp";
    case Op::plus: return "plus";
    case Op::zero: return "zero";
    case Op::bang: return "bang";
    case Op::eps: return "eps";
    case Op::diff: return "diff";
    case Op::prim: return "prim";
    }
    return "?";
}

/// Immutable, typed morphism term. Every node caches its domain and codomain,
/// so constructors typecheck in O(1).
///
/// Child layout: pair(f,g) and plus(f,g) store f first; comp(g,f) stores the
/// outer map g first and the inner map f second; eps and diff store their
/// argument first.
class MapTerm {
public:
    Op op() const noexcept;
    const ObjType& dom() const noexcept;
    const ObjType& cod() const noexcept;
    const MapTerm& first() const noexcept;
    const MapTerm& second() const noexcept;
    /// Primitive name (prim nodes only).
    const std::string& name() const noexcept;

    bool same_node(const MapTerm& other) const noexcept { return node_ == other.node_; }

private:
    struct Node;

    MapTerm() = default;
    explicit MapTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static MapTerm make(Op op, ObjType dom, ObjType cod, MapTerm first = {}, MapTerm second = {},
                        std::string name = {});

    friend MapTerm mk_id(const ObjType&);
    friend MapTerm mk_proj0(const ObjType&, const ObjType&);
    friend MapTerm mk_proj1(const ObjType&, const ObjType&);
    friend MapTerm mk_pair(const MapTerm&, const MapTerm&);
    friend MapTerm mk_comp(const MapTerm&, const MapTerm&);
    friend MapTerm mk_plus(const MapTerm&, const MapTerm&);
    friend MapTerm mk_zero(const ObjType&, const ObjType&);
    friend MapTerm mk_bang(const ObjType&);
    friend MapTerm mk_eps(const MapTerm&);
    friend MapTerm mk_diff(const MapTerm&);
    friend MapTerm mk_prim(std::string, const ObjType&, const ObjType&);

    std::shared_ptr<const Node> node_;
};

struct MapTerm::Node {
    Op op;
    ObjType dom;
    ObjType cod;
    MapTerm first;
    MapTerm second;
    std::string name;
};

inline Op MapTerm::op() const noexcept { return node_->op; }
inline const ObjType& MapTerm::dom() const noexcept { return node_->dom; }
inline const ObjType& MapTerm::cod() const noexcept { return node_->cod; }
inline const MapTerm& MapTerm::first() const noexcept { return node_->first; }
inline const MapTerm& MapTerm::second() const noexcept { return node_->second; }
inline const std::string& MapTerm::name() const noexcept { return node_->name; }

inline MapTerm MapTerm::make(Op op, ObjType dom, ObjType cod, MapTerm first, MapTerm second, std::string name) {
    return MapTerm(std::make_shared<const Node>(
        Node{op, std::move(dom), std::move(cod), std::move(first), std::move(second), std::move(name)}));
}

namespace detail {
[[noreturn]] inline void mismatch(std::string_view ctor, const ObjType& expected, const ObjType& got) {
    throw TypeMismatch(std::string(ctor) + ": expected " + expected.to_string() + ", got " + got.to_string());
}
} // namespace detail

inline MapTerm mk_id(const ObjType& a) { return MapTerm::make(Op::id, a, a); }

inline MapTerm mk_proj0(const ObjType& a, const ObjType& b) {
    return MapTerm::make(Op::proj0, ObjType::prod(a, b), a);
}

inline MapTerm mk_proj1(const ObjType& a, const ObjType& b) {
    return MapTerm::make(Op::proj1, ObjType::prod(a, b), b);
}

inline MapTerm mk_pair(const MapTerm& f, const MapTerm& g) {
    if (!(f.dom() == g.dom())) detail::mismatch("pair", f.dom(), g.dom());
    return MapTerm::make(Op::pair, f.dom(), ObjType::prod(f.cod(), g.cod()), f, g);
}

/// g ∘ f.
inline MapTerm mk_comp(const MapTerm& g, const MapTerm& f) {
    if (!(f.cod() == g.dom())) detail::mismatch("comp", g.dom(), f.cod());
    return MapTerm::make(Op::comp, f.dom(), g.cod(), g, f);
}

inline MapTerm mk_plus(const MapTerm& f, const MapTerm& g) {
    if (!(f.dom() == g.dom())) detail::mismatch("plus (domain)", f.dom(), g.dom());
    if (!(f.cod() == g.cod())) detail::mismatch("plus (codomain)", f.cod(), g.cod());
    return MapTerm::make(Op::plus, f.dom(), f.cod(), f, g);
}

inline MapTerm mk_zero(const ObjType& a, const ObjType& b) { return MapTerm::make(Op::zero, a, b); }

inline MapTerm mk_bang(const ObjType& a) { return MapTerm::make(Op::bang, a, ObjType::unit()); }

inline MapTerm mk_eps(const MapTerm& f) { return MapTerm::make(Op::eps, f.dom(), f.cod(), f); }

/// Formal difference node ∂[f] : dom(f)×dom(f) → cod(f).
inline MapTerm mk_diff(const MapTerm& f) { return MapTerm::make(Op::diff, square(f.dom()), f.cod(), f); }

/// Primitive reference. Whether `name` exists is checked at evaluation time.
inline MapTerm mk_prim(std::string name, const ObjType& a, const ObjType& b) {
    return MapTerm::make(Op::prim, a, b, {}, {}, std::move(name));
}

/// Syntax-tree identity. No normalization: plus(f,g) and plus(g,f) differ.
inline bool structural_eq(const MapTerm& f, const MapTerm& g) {
    if (f.same_node(g)) return true;
    if (f.op() != g.op() || !(f.dom() == g.dom()) || !(f.cod() == g.cod())) return false;
    switch (f.op()) {
    case Op::pair:
    case Op::comp:
    case Op::plus: return structural_eq(f.first(), g.first()) && structural_eq(f.second(), g.second());
    case Op::eps:
    case Op::diff: return structural_eq(f.first(), g.first());
    case Op::prim: return f.name() == g.name();
    default: return true;
    }
}

inline std::size_t term_size(const MapTerm& f) {
    switch (f.op()) {
    case Op::pair:
    case Op::comp:
    case Op::plus: return 1 + term_size(f.first()) + term_size(f.second());
    case Op::eps:
    case Op::diff: return 1 + term_size(f.first());
    default: return 1;
    }
}

// ---- builders -------------------------------------------------------------

/// Nested projection in subscript order: project(dom, {i, j}) is π_i ∘ π_j,
/// so the last index is applied first.
inline MapTerm project(const ObjType& dom, std::initializer_list<int> path) {
    MapTerm t = mk_id(dom);
    for (auto it = std::rbegin(path); it != std::rend(path); ++it) {
        const ObjType& c = t.cod();
        if (!c.is_prod()) throw TypeMismatch("project: " + c.to_string() + " is not a product");
        t = mk_comp(*it == 0 ? mk_proj0(c.left(), c.right()) : mk_proj1(c.left(), c.right()), t);
    }
    return t;
}

/// ⟨⟨a, b⟩, ⟨c, d⟩⟩.
inline MapTerm pair4(const MapTerm& a, const MapTerm& b, const MapTerm& c, const MapTerm& d) {
    return mk_pair(mk_pair(a, b), mk_pair(c, d));
}

/// f × g = ⟨f ∘ π0, g ∘ π1⟩.
inline MapTerm product_map(const MapTerm& f, const MapTerm& g) {
    return mk_pair(mk_comp(f, mk_proj0(f.dom(), g.dom())), mk_comp(g, mk_proj1(f.dom(), g.dom())));
}

/// ⟨π1, π0⟩ : A×B → B×A.
inline MapTerm swap_map(const ObjType& a, const ObjType& b) {
    return mk_pair(mk_proj1(a, b), mk_proj0(a, b));
}

} // namespace deltacat
