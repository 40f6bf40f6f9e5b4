#pragma once

#include <deltacat/model.hpp>

#include <cmath>
#include <memory>
#include <string>

namespace deltacat {

/// ℝ as float64 with tolerance-based equality: a pair of leaves is equal when
/// |a-b| <= abs_tol or |a-b| <= rel_tol * max(|a|, |b|).
class RealAlgebra : public Algebra {
public:
    explicit RealAlgebra(double rel_tol = 1e-6, double abs_tol = 1e-9, double bound = 2.0)
        : rel_tol_(rel_tol), abs_tol_(abs_tol), bound_(bound) {}

    std::vector<std::string> bases() const override { return {"R"}; }
    Leaf zero(const std::string&) const override { return 0.0; }
    Leaf add(const Leaf& a, const Leaf& b) const override { return std::get<double>(a) + std::get<double>(b); }
    Leaf neg(const Leaf& a) const override { return -std::get<double>(a); }
    Leaf eps(const Leaf&) const override { return 0.0; }
    bool equal(const Leaf& a, const Leaf& b) const override {
        const double x = std::get<double>(a);
        const double y = std::get<double>(b);
        if (x == y) return true;
        const double d = std::fabs(x - y);
        return d <= abs_tol_ || d <= rel_tol_ * std::fmax(std::fabs(x), std::fabs(y));
    }
    bool accepts(const std::string& base, const Leaf& l) const override {
        return base == "R" && std::holds_alternative<double>(l);
    }
    Leaf sample(const std::string&, Rng& rng) const override { return rng.real(-bound_, bound_); }
    Leaf parse(const std::string&, const SExpr& e) const override {
        if (e.is_atom()) {
            try {
                std::size_t used = 0;
                double d = std::stod(e.text, &used);
                if (used == e.text.size()) return d;
            } catch (const std::exception&) {
            }
        }
        throw SyntaxError("expected a real number", e.line, e.col);
    }
    std::string comparison_mode() const override {
        char buf[96];
        std::snprintf(buf, sizeof buf, "tol(abs=%g,rel=%g)", abs_tol_, rel_tol_);
        return buf;
    }

private:
    double rel_tol_;
    double abs_tol_;
    double bound_;
};

/// ℚ with exact equality, for polynomial primitives.
class RationalAlgebra : public Algebra {
public:
    std::vector<std::string> bases() const override { return {"R"}; }
    Leaf zero(const std::string&) const override { return Rational(0); }
    Leaf add(const Leaf& a, const Leaf& b) const override {
        return Rational(std::get<Rational>(a) + std::get<Rational>(b));
    }
    Leaf neg(const Leaf& a) const override { return Rational(-std::get<Rational>(a)); }
    Leaf eps(const Leaf&) const override { return Rational(0); }
    bool equal(const Leaf& a, const Leaf& b) const override { return std::get<Rational>(a) == std::get<Rational>(b); }
    bool accepts(const std::string& base, const Leaf& l) const override {
        return base == "R" && std::holds_alternative<Rational>(l);
    }
    /// p/q with q in 1..4 and |p/q| <= 2.
    Leaf sample(const std::string&, Rng& rng) const override {
        const long long q = rng.uniform(1, 4);
        return Rational(rng.uniform(-2 * q, 2 * q), q);
    }
    Leaf parse(const std::string&, const SExpr& e) const override {
        if (e.is_atom()) {
            const auto slash = e.text.find('/');
            if (slash != std::string::npos) {
                SExpr num{SExpr::Kind::atom, e.text.substr(0, slash), {}, e.line, e.col};
                SExpr den{SExpr::Kind::atom, e.text.substr(slash + 1), {}, e.line, e.col};
                Integer d = parse_integer(den);
                if (d == 0) throw SyntaxError("zero denominator", e.line, e.col);
                return Rational(parse_integer(num), d);
            }
            const auto dot = e.text.find('.');
            if (dot != std::string::npos) {
                std::string digits = e.text.substr(0, dot) + e.text.substr(dot + 1);
                SExpr whole{SExpr::Kind::atom, digits, {}, e.line, e.col};
                Integer scale = 1;
                for (std::size_t i = dot + 1; i < e.text.size(); ++i) scale *= 10;
                return Rational(parse_integer(whole), scale);
            }
            return Rational(parse_integer(e));
        }
        throw SyntaxError("expected a rational number", e.line, e.col);
    }
};

namespace detail {

inline double as_real(const Value& v) {
    const auto* d = std::get_if<double>(&v.as_leaf());
    if (!d) throw ShapeMismatch("expected a real, got " + v.to_string());
    return *d;
}

inline const Rational& as_rational(const Value& v) {
    const auto* r = std::get_if<Rational>(&v.as_leaf());
    if (!r) throw ShapeMismatch("expected a rational, got " + v.to_string());
    return *r;
}

/// Polynomial evaluator usable for both float and exact leaves.
template <class F>
std::function<Value(const Value&)> poly_unary(F fn) {
    return [fn](const Value& v) {
        if (const auto* d = std::get_if<double>(&v.as_leaf())) return Value::leaf(fn(*d));
        return Value::leaf(Rational(fn(as_rational(v))));
    };
}

template <class F>
std::function<Value(const Value&)> poly_binary(F fn) {
    return [fn](const Value& v) {
        if (std::holds_alternative<double>(v.first().as_leaf()))
            return Value::leaf(fn(as_real(v.first()), as_real(v.second())));
        return Value::leaf(Rational(fn(as_rational(v.first()), as_rational(v.second()))));
    };
}

} // namespace detail

/// Smooth maps ℝⁿ → ℝᵐ with ε = 0 and ∂ the directional derivative, given
/// by symbolic derivative terms on every primitive.
///
/// `exact` selects rational arithmetic and restricts the pool to polynomials.
inline Model make_smooth_model(bool exact = false, double rel_tol = 1e-6) {
    std::shared_ptr<const Algebra> algebra;
    if (exact)
        algebra = std::make_shared<RationalAlgebra>();
    else
        algebra = std::make_shared<RealAlgebra>(rel_tol);
    Model m(exact ? "smooth:exact" : "smooth", "smooth", algebra, DiffRule::symbolic, EpsKind::zero);

    const ObjType r = ObjType::base("R");
    const ObjType rr = ObjType::prod(r, r);
    auto p = [&](const char* name) { return mk_prim(name, r, r); };
    const MapTerm mul = mk_prim("mul", rr, r);
    const MapTerm x = mk_proj0(r, r);
    const MapTerm dx = mk_proj1(r, r);
    auto times = [&](const MapTerm& a, const MapTerm& b) { return mk_comp(mul, mk_pair(a, b)); };

    auto add = [&](std::string name, std::function<Value(const Value&)> fn, MapTerm d, bool linear = false,
                   ObjType dom = ObjType()) {
        const ObjType in = dom.is_unit() ? r : dom;
        m.register_prim(Primitive{std::move(name), in, r, std::move(fn), std::move(d), linear});
    };

    add("sq", detail::poly_unary([](auto v) -> decltype(v) { return v * v; }), mk_comp(p("scale2"), times(x, dx)));
    add("cube", detail::poly_unary([](auto v) -> decltype(v) { return v * v * v; }),
        times(mk_comp(p("scale3"), mk_comp(p("sq"), x)), dx));
    add("neg", detail::poly_unary([](auto v) -> decltype(v) { return -v; }), mk_comp(p("neg"), dx), true);
    add("scale2", detail::poly_unary([](auto v) -> decltype(v) { return v + v; }), mk_comp(p("scale2"), dx), true);
    add("scale3", detail::poly_unary([](auto v) -> decltype(v) { return v + v + v; }), mk_comp(p("scale3"), dx), true);
    {
        // d mul((a,b),(da,db)) = a*db + da*b
        const MapTerm d = mk_plus(mk_comp(mul, mk_pair(project(square(rr), {0, 0}), project(square(rr), {1, 1}))),
                                  mk_comp(mul, mk_pair(project(square(rr), {0, 1}), project(square(rr), {1, 0}))));
        add("mul", detail::poly_binary([](auto a, auto b) -> decltype(a) { return a * b; }), d, false, rr);
    }
    if (!exact) {
        auto real_fn = [](double (*fn)(double)) {
            return [fn](const Value& v) { return Value::leaf(fn(detail::as_real(v))); };
        };
        add("sin", real_fn([](double v) { return std::sin(v); }), times(mk_comp(p("cos"), x), dx));
        add("cos", real_fn([](double v) { return std::cos(v); }),
            mk_comp(p("neg"), times(mk_comp(p("sin"), x), dx)));
        add("expsin", real_fn([](double v) { return std::exp(std::sin(v)); }),
            times(times(mk_comp(p("expsin"), x), mk_comp(p("cos"), x)), dx));
    }
    return m;
}

} // namespace deltacat
