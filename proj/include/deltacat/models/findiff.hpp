#pragma once

#include <deltacat/model.hpp>

#include <memory>

namespace deltacat {

/// ℤ with ε = id: the calculus of finite differences.
class IntegerAlgebra : public Algebra {
public:
    explicit IntegerAlgebra(long long bound = 20) : bound_(bound) {}

    std::vector<std::string> bases() const override { return {"Z"}; }
    Leaf zero(const std::string&) const override { return Integer(0); }
    Leaf add(const Leaf& a, const Leaf& b) const override { return Integer(std::get<Integer>(a) + std::get<Integer>(b)); }
    Leaf neg(const Leaf& a) const override { return Integer(-std::get<Integer>(a)); }
    Leaf eps(const Leaf& a) const override { return a; }
    bool equal(const Leaf& a, const Leaf& b) const override { return std::get<Integer>(a) == std::get<Integer>(b); }
    bool accepts(const std::string& base, const Leaf& l) const override {
        return base == "Z" && std::holds_alternative<Integer>(l);
    }
    Leaf sample(const std::string&, Rng& rng) const override { return Integer(rng.uniform(-bound_, bound_)); }
    Leaf parse(const std::string&, const SExpr& e) const override { return parse_integer(e); }

private:
    long long bound_;
};

namespace detail {

template <class F>
Primitive int_unary(std::string name, const ObjType& z, F fn, bool linear = false) {
    return Primitive{std::move(name), z, z,
                     [fn](const Value& v) { return Value::leaf(Integer(fn(as_int(v)))); }, std::nullopt, linear};
}

template <class F>
Primitive int_binary(std::string name, const ObjType& z, F fn, bool linear = false) {
    return Primitive{std::move(name), ObjType::prod(z, z), z,
                     [fn](const Value& v) { return Value::leaf(Integer(fn(as_int(v.first()), as_int(v.second())))); },
                     std::nullopt, linear};
}

} // namespace detail

/// Abelian group ℤ and arbitrary functions, ∂[f](x,y) = f(x+y) - f(x).
///
/// Pool: sq, cube, abs, inc and mul are non-linear; times3, neg and sub are
/// group homomorphisms and also carry symbolic derivatives so that both
/// derivative routes can be cross-checked.
inline Model make_findiff_model() {
    Model m("findiff", "findiff", std::make_shared<IntegerAlgebra>(), DiffRule::finite_difference,
            EpsKind::identity);
    const ObjType z = ObjType::base("Z");
    const ObjType zz = ObjType::prod(z, z);
    m.register_prim(detail::int_unary("sq", z, [](const Integer& x) { return x * x; }));
    m.register_prim(detail::int_unary("cube", z, [](const Integer& x) { return x * x * x; }));
    m.register_prim(detail::int_unary("abs", z, [](const Integer& x) { return x < 0 ? Integer(-x) : x; }));
    m.register_prim(detail::int_unary("inc", z, [](const Integer& x) { return x + 1; }));
    m.register_prim(detail::int_binary("mul", z, [](const Integer& x, const Integer& y) { return x * y; }));

    auto times3 = detail::int_unary("times3", z, [](const Integer& x) { return 3 * x; }, true);
    times3.derivative = mk_comp(mk_prim("times3", z, z), mk_proj1(z, z));
    m.register_prim(times3);

    auto neg = detail::int_unary("neg", z, [](const Integer& x) { return Integer(-x); }, true);
    neg.derivative = mk_comp(mk_prim("neg", z, z), mk_proj1(z, z));
    m.register_prim(neg);

    auto sub = detail::int_binary("sub", z, [](const Integer& x, const Integer& y) { return x - y; }, true);
    sub.derivative = mk_comp(mk_prim("sub", zz, z), mk_proj1(zz, zz));
    m.register_prim(sub);
    return m;
}

} // namespace deltacat
