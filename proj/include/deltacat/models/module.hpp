#pragma once

#include <deltacat/model.hpp>

#include <array>
#include <memory>
#include <string>

namespace deltacat {

/// The free ℕ-semimodule ℕ² with ε = scalar multiplication by r.
class ModuleAlgebra : public Algebra {
public:
    static constexpr std::size_t dim = 2;

    explicit ModuleAlgebra(unsigned long long r, long long bound = 20) : r_(r), bound_(bound) {}

    std::vector<std::string> bases() const override { return {"M"}; }
    Leaf zero(const std::string&) const override { return ModElem{std::vector<Integer>(dim, Integer(0))}; }
    Leaf add(const Leaf& a, const Leaf& b) const override {
        ModElem out = std::get<ModElem>(a);
        const auto& rhs = std::get<ModElem>(b).coords;
        for (std::size_t i = 0; i < dim; ++i) out.coords[i] += rhs[i];
        return out;
    }
    Leaf eps(const Leaf& a) const override {
        ModElem out = std::get<ModElem>(a);
        for (auto& c : out.coords) c *= r_;
        return out;
    }
    bool equal(const Leaf& a, const Leaf& b) const override { return std::get<ModElem>(a) == std::get<ModElem>(b); }
    bool accepts(const std::string& base, const Leaf& l) const override {
        const auto* m = std::get_if<ModElem>(&l);
        if (base != "M" || !m || m->coords.size() != dim) return false;
        for (const auto& c : m->coords)
            if (c < 0) return false;
        return true;
    }
    Leaf sample(const std::string&, Rng& rng) const override {
        ModElem m;
        for (std::size_t i = 0; i < dim; ++i) m.coords.emplace_back(rng.uniform(0, bound_));
        return m;
    }
    Leaf parse(const std::string&, const SExpr& e) const override {
        if (e.kind != SExpr::Kind::brace || e.items.size() != dim)
            throw SyntaxError("expected a module element {a b}", e.line, e.col);
        ModElem m;
        for (const auto& item : e.items) {
            Integer c = parse_integer(item);
            if (c < 0) throw SyntaxError("module coordinates are natural numbers", item.line, item.col);
            m.coords.push_back(c);
        }
        return m;
    }

    unsigned long long scalar() const noexcept { return r_; }

private:
    unsigned long long r_;
    long long bound_;
};

namespace detail {

using Matrix2 = std::array<std::array<unsigned, 2>, 2>;

inline ModElem apply(const Matrix2& a, const ModElem& v) {
    ModElem out{{Integer(0), Integer(0)}};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out.coords[i] += a[i][j] * v.coords[j];
    return out;
}

} // namespace detail

/// ℕ-module morphisms with ∂[f](m,n) = f(n). The pool is matrix-apply maps,
/// all of them linear; `mat_b` also carries a symbolic derivative.
inline Model make_module_model(unsigned long long r) {
    Model m("module:r=" + std::to_string(r), "module", std::make_shared<ModuleAlgebra>(r), DiffRule::linear,
            EpsKind::scalar);
    const ObjType mo = ObjType::base("M");
    const ObjType mm = ObjType::prod(mo, mo);
    auto matrix = [&](std::string name, detail::Matrix2 a) {
        return Primitive{std::move(name), mo, mo,
                         [a](const Value& v) { return Value::leaf(detail::apply(a, as_mod(v))); }, std::nullopt,
                         true};
    };
    m.register_prim(matrix("mat_a", {{{1, 2}, {0, 1}}}));
    auto swap = matrix("mat_b", {{{0, 1}, {1, 0}}});
    swap.derivative = mk_comp(mk_prim("mat_b", mo, mo), mk_proj1(mo, mo));
    m.register_prim(swap);
    m.register_prim(matrix("mat_c", {{{2, 0}, {1, 3}}}));
    m.register_prim(matrix("proj_x", {{{1, 0}, {0, 0}}}));
    m.register_prim(Primitive{"mix", mm, mo,
                              [](const Value& v) {
                                  ModElem out = detail::apply({{{1, 2}, {0, 1}}}, as_mod(v.first()));
                                  const auto& n = as_mod(v.second()).coords;
                                  for (std::size_t i = 0; i < 2; ++i) out.coords[i] += n[i];
                                  return Value::leaf(std::move(out));
                              },
                              std::nullopt, true});
    return m;
}

} // namespace deltacat
