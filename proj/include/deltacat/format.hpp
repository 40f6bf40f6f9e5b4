#pragma once

#include <deltacat/term.hpp>

#include <string>

namespace deltacat {

/// Canonical term-format spelling. Primitives print as `(prim name)`; their
/// types come back from the model registry when parsed.
inline std::string print_term(const MapTerm& f) {
    auto head = [&](std::string_view name) { return "(" + std::string(name); };
    switch (f.op()) {
    case Op::id: return head("id") + " " + f.dom().to_string() + ")";
    case Op::proj0:
    case Op::proj1:
    case Op::zero: {
        const ObjType a = f.op() == Op::zero ? f.dom() : f.dom().left();
        const ObjType b = f.op() == Op::zero ? f.cod() : f.dom().right();
        return head(op_name(f.op())) + " " + a.to_string() + " " + b.to_string() + ")";
    }
    case Op::bang: return head("bang") + " " + f.dom().to_string() + ")";
    case Op::pair:
    case Op::comp:
    case Op::plus:
        return head(op_name(f.op())) + " " + print_term(f.first()) + " " + print_term(f.second()) + ")";
    case Op::eps:
    case Op::diff: return head(op_name(f.op())) + " " + print_term(f.first()) + ")";
    case Op::prim: return head("prim") + " " + f.name() + ")";
    }
    return {};
}

/// `dom -> cod`.
inline std::string print_signature(const MapTerm& f) { return f.dom().to_string() + " -> " + f.cod().to_string(); }

} // namespace deltacat
