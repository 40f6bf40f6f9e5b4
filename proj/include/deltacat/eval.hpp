#pragma once

#include <deltacat/diff.hpp>
#include <deltacat/model.hpp>
#include <deltacat/term.hpp>
#include <deltacat/value.hpp>

namespace deltacat {

namespace detail {

inline Value eval_unchecked(const Model& m, const MapTerm& f, const Value& x);

inline Value eval_diff(const Model& m, const MapTerm& g, const Value& xy) {
    const ObjType& a = g.dom();
    const ObjType& b = g.cod();
    const Value& x = xy.first();
    const Value& y = xy.second();
    switch (m.diff_rule()) {
    case DiffRule::finite_difference:
        return m.sub(b, eval_unchecked(m, g, m.add(a, x, y)), eval_unchecked(m, g, x));
    case DiffRule::linear: return eval_unchecked(m, g, y);
    case DiffRule::stream: {
        Value full = eval_unchecked(m, g, m.add(a, x, y));
        Value shifted = eval_unchecked(m, g, m.add(a, x, m.eps(a, y)));
        return m.sub(b, m.splice_head(b, full, shifted), eval_unchecked(m, g, x));
    }
    case DiffRule::symbolic: {
        MapTerm dg = derive(g, m);
        if (dg.op() == Op::diff) {
            const MapTerm& stuck = g.op() == Op::diff ? g.first() : g;
            throw NoSemanticDiff(stuck.op() == Op::prim ? "primitive '" + stuck.name() + "'" : "term");
        }
        return eval_unchecked(m, dg, xy);
    }
    }
    return {};
}

inline Value eval_unchecked(const Model& m, const MapTerm& f, const Value& x) {
    switch (f.op()) {
    case Op::id: return x;
    case Op::proj0: return x.first();
    case Op::proj1: return x.second();
    case Op::pair: {
        Value l = eval_unchecked(m, f.first(), x);
        return Value::pair(std::move(l), eval_unchecked(m, f.second(), x));
    }
    case Op::comp: return eval_unchecked(m, f.first(), eval_unchecked(m, f.second(), x));
    case Op::plus: return m.add(f.cod(), eval_unchecked(m, f.first(), x), eval_unchecked(m, f.second(), x));
    case Op::zero: return m.zero(f.cod());
    case Op::bang: return Value::unit();
    case Op::eps: return m.eps(f.cod(), eval_unchecked(m, f.first(), x));
    case Op::diff: return eval_diff(m, f.first(), x);
    case Op::prim: {
        const Primitive& p = m.prim(f.name());
        if (!(p.dom == f.dom()) || !(p.cod == f.cod()))
            throw TypeMismatch("primitive '" + p.name + "' has type " + p.dom.to_string() + " -> " +
                               p.cod.to_string() + ", term expects " + f.dom().to_string() + " -> " +
                               f.cod().to_string());
        return p.evaluate(x);
    }
    }
    return {};
}

} // namespace detail

/// Denotational evaluation of `f` at `x` in `model`.
inline Value eval(const Model& model, const MapTerm& f, const Value& x) {
    model.check_shape(f.dom(), x);
    return detail::eval_unchecked(model, f, x);
}

/// Value-level ε on a point of `obj`.
inline Value eps_apply(const Model& model, const ObjType& obj, const Value& v) {
    model.check_shape(obj, v);
    return model.eps(obj, v);
}

} // namespace deltacat
