#pragma once

#include <deltacat/model.hpp>
#include <deltacat/term.hpp>

#include <cstddef>

namespace deltacat {

namespace detail {

inline MapTerm derive_impl(const MapTerm& f, const Model* model) {
    switch (f.op()) {
    case Op::id: return mk_proj1(f.dom(), f.dom());
    case Op::proj0:
    case Op::proj1: {
        const ObjType& d = f.dom();
        return mk_comp(f, mk_proj1(d, d));
    }
    case Op::pair: return mk_pair(derive_impl(f.first(), model), derive_impl(f.second(), model));
    case Op::bang: return mk_bang(square(f.dom()));
    case Op::comp: {
        const MapTerm& g = f.first();
        const MapTerm& h = f.second();
        const ObjType& d = h.dom();
        return mk_comp(derive_impl(g, model), mk_pair(mk_comp(h, mk_proj0(d, d)), derive_impl(h, model)));
    }
    case Op::plus: return mk_plus(derive_impl(f.first(), model), derive_impl(f.second(), model));
    case Op::zero: return mk_zero(square(f.dom()), f.cod());
    case Op::eps: return mk_eps(derive_impl(f.first(), model));
    case Op::prim:
        if (model) {
            if (const auto* p = model->find_prim(f.name()); p && p->derivative) return *p->derivative;
        }
        return mk_diff(f);
    case Op::diff:
        // Without an evaluation formula for Diff nodes, expand the inner
        // derivative first; stop when no progress is possible.
        if (model && model->diff_rule() == DiffRule::symbolic) {
            MapTerm inner = derive_impl(f.first(), model);
            if (inner.op() != Op::diff) return derive_impl(inner, model);
        }
        return mk_diff(f);
    }
    return mk_diff(f);
}

} // namespace detail

/// Structural difference combinator: rewrites by the chain, pairing, sum and
/// projection rules down to primitives. Primitives without a registered
/// derivative term become formal Diff nodes, resolved at evaluation.
inline MapTerm derive(const MapTerm& f, const Model& model) { return detail::derive_impl(f, &model); }

/// Model-free variant: every primitive becomes a formal Diff node.
inline MapTerm derive(const MapTerm& f) { return detail::derive_impl(f, nullptr); }

inline MapTerm derive_n(const MapTerm& f, std::size_t n, const Model& model) {
    MapTerm t = f;
    for (std::size_t i = 0; i < n; ++i) t = derive(t, model);
    return t;
}

inline MapTerm derive_n(const MapTerm& f, std::size_t n) {
    MapTerm t = f;
    for (std::size_t i = 0; i < n; ++i) t = derive(t);
    return t;
}

/// ⊕_A = π0 + ε(π1) : A×A → A.
inline MapTerm oplus_term(const ObjType& a) { return mk_plus(mk_proj0(a, a), mk_eps(mk_proj1(a, a))); }

/// +_A = π0 + π1 : A×A → A.
inline MapTerm plus_point(const ObjType& a) { return mk_plus(mk_proj0(a, a), mk_proj1(a, a)); }

/// 0_A : ⊤ → A.
inline MapTerm zero_point(const ObjType& a) { return mk_zero(ObjType::unit(), a); }

} // namespace deltacat
