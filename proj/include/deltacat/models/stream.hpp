#pragma once

#include <deltacat/model.hpp>

#include <memory>
#include <string>

namespace deltacat {

/// Length-N prefixes of ℤ-streams with ε = z, the truncation that zeroes
/// index 0. All stream equalities are prefix equalities at depth N.
class StreamAlgebra : public Algebra {
public:
    explicit StreamAlgebra(std::size_t depth, long long bound = 10) : depth_(depth), bound_(bound) {}

    std::size_t depth() const noexcept { return depth_; }

    std::vector<std::string> bases() const override { return {"S"}; }
    Leaf zero(const std::string&) const override { return StreamPrefix{std::vector<Integer>(depth_, Integer(0))}; }
    Leaf add(const Leaf& a, const Leaf& b) const override {
        StreamPrefix out = std::get<StreamPrefix>(a);
        const auto& rhs = std::get<StreamPrefix>(b).terms;
        for (std::size_t i = 0; i < out.terms.size(); ++i) out.terms[i] += rhs[i];
        return out;
    }
    Leaf neg(const Leaf& a) const override {
        StreamPrefix out = std::get<StreamPrefix>(a);
        for (auto& t : out.terms) t = -t;
        return out;
    }
    /// z(a)_0 = 0, z(a)_{n+1} = a_{n+1}.
    Leaf eps(const Leaf& a) const override {
        StreamPrefix out = std::get<StreamPrefix>(a);
        if (!out.terms.empty()) out.terms[0] = 0;
        return out;
    }
    Leaf splice_head(const Leaf& head, const Leaf& tail) const override {
        StreamPrefix out = std::get<StreamPrefix>(tail);
        if (!out.terms.empty()) out.terms[0] = std::get<StreamPrefix>(head).terms[0];
        return out;
    }
    bool equal(const Leaf& a, const Leaf& b) const override {
        return std::get<StreamPrefix>(a) == std::get<StreamPrefix>(b);
    }
    bool accepts(const std::string& base, const Leaf& l) const override {
        const auto* s = std::get_if<StreamPrefix>(&l);
        return base == "S" && s && s->terms.size() == depth_;
    }
    Leaf sample(const std::string&, Rng& rng) const override {
        StreamPrefix s;
        for (std::size_t i = 0; i < depth_; ++i) s.terms.emplace_back(rng.uniform(-bound_, bound_));
        return s;
    }
    Leaf parse(const std::string&, const SExpr& e) const override {
        if (e.kind != SExpr::Kind::bracket)
            throw SyntaxError("expected a stream prefix [a0 a1 ...]", e.line, e.col);
        if (e.items.size() != depth_)
            throw ShapeMismatch("stream prefix has " + std::to_string(e.items.size()) + " terms, model depth is " +
                                std::to_string(depth_));
        StreamPrefix s;
        for (const auto& item : e.items) s.terms.push_back(parse_integer(item));
        return s;
    }

private:
    std::size_t depth_;
    long long bound_;
};

namespace detail {

template <class F>
Primitive stream_pointwise(std::string name, const ObjType& s, F fn, bool linear = false) {
    return Primitive{std::move(name), s, s,
                     [fn](const Value& v) {
                         StreamPrefix out = as_stream(v);
                         for (auto& t : out.terms) t = fn(t);
                         return Value::leaf(std::move(out));
                     },
                     std::nullopt, linear};
}

template <class F>
Primitive stream_pointwise2(std::string name, const ObjType& s, F fn, bool linear = false) {
    return Primitive{std::move(name), ObjType::prod(s, s), s,
                     [fn](const Value& v) {
                         StreamPrefix out = as_stream(v.first());
                         const auto& rhs = as_stream(v.second()).terms;
                         for (std::size_t i = 0; i < out.terms.size(); ++i) out.terms[i] = fn(out.terms[i], rhs[i]);
                         return Value::leaf(std::move(out));
                     },
                     std::nullopt, linear};
}

} // namespace detail

/// Output index n reads input index n+1: deliberately acausal. Not part of
/// any model's pool; tests register it as a negative control.
inline Primitive make_lookahead_prim() {
    const ObjType s = ObjType::base("S");
    return Primitive{"lookahead", s, s,
                     [](const Value& v) {
                         StreamPrefix out = as_stream(v);
                         const auto& in = as_stream(v).terms;
                         for (std::size_t i = 0; i < out.terms.size(); ++i)
                             out.terms[i] = i + 1 < in.size() ? in[i + 1] : Integer(0);
                         return Value::leaf(std::move(out));
                     },
                     std::nullopt, false, false};
}

/// Causal maps on ℤ-streams. Pool: pointwise lifts of the finite-difference
/// primitives, delay and prefix sum.
///
/// Only the pointwise homomorphisms are flagged linear. delay and psum are
/// homomorphisms but fail ∂[f] = f ∘ π1 at index 1, because the tail formula
/// only sees z(b).
inline Model make_stream_model(std::size_t depth = 8) {
    Model m("stream:depth=" + std::to_string(depth), "stream", std::make_shared<StreamAlgebra>(depth),
            DiffRule::stream, EpsKind::truncation);
    const ObjType s = ObjType::base("S");
    m.register_prim(detail::stream_pointwise("sq", s, [](const Integer& x) { return Integer(x * x); }));
    m.register_prim(detail::stream_pointwise("cube", s, [](const Integer& x) { return Integer(x * x * x); }));
    m.register_prim(detail::stream_pointwise("abs", s, [](const Integer& x) { return x < 0 ? Integer(-x) : x; }));
    m.register_prim(detail::stream_pointwise("inc", s, [](const Integer& x) { return Integer(x + 1); }));
    m.register_prim(
        detail::stream_pointwise2("mul", s, [](const Integer& x, const Integer& y) { return Integer(x * y); }));
    m.register_prim(detail::stream_pointwise("times3", s, [](const Integer& x) { return Integer(3 * x); }, true));
    m.register_prim(detail::stream_pointwise("neg", s, [](const Integer& x) { return Integer(-x); }, true));
    m.register_prim(
        detail::stream_pointwise2("sub", s, [](const Integer& x, const Integer& y) { return Integer(x - y); }, true));
    m.register_prim(Primitive{"delay", s, s,
                              [](const Value& v) {
                                  const auto& in = as_stream(v).terms;
                                  StreamPrefix out{std::vector<Integer>(in.size(), Integer(0))};
                                  for (std::size_t i = 1; i < in.size(); ++i) out.terms[i] = in[i - 1];
                                  return Value::leaf(std::move(out));
                              },
                              std::nullopt, false});
    m.register_prim(Primitive{"psum", s, s,
                              [](const Value& v) {
                                  StreamPrefix out = as_stream(v);
                                  for (std::size_t i = 1; i < out.terms.size(); ++i) out.terms[i] += out.terms[i - 1];
                                  return Value::leaf(std::move(out));
                              },
                              std::nullopt, false});
    return m;
}

} // namespace deltacat
