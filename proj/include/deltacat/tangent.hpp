#pragma once

#include <deltacat/diff.hpp>
#include <deltacat/model.hpp>
#include <deltacat/term.hpp>

namespace deltacat {

/// T(f) = ⟨f ∘ π0, ∂[f]⟩ : T(A) → T(B).
inline MapTerm tangent_map(const MapTerm& f, const Model& model) {
    const ObjType& a = f.dom();
    return mk_pair(mk_comp(f, mk_proj0(a, a)), derive(f, model));
}

/// η_A = ⟨1_A, 0⟩ : A → T(A).
inline MapTerm eta(const ObjType& a) { return mk_pair(mk_id(a), mk_zero(a, a)); }

/// μ_A = ⟨π00, π10 + π01 + ε(π11)⟩ : T(T(A)) → T(A), with π_ij = π_i ∘ π_j.
inline MapTerm mu(const ObjType& a) {
    const ObjType tta = square(square(a));
    return mk_pair(project(tta, {0, 0}),
                   mk_plus(mk_plus(project(tta, {1, 0}), project(tta, {0, 1})), mk_eps(project(tta, {1, 1}))));
}

/// φ = ⟨⟨π00, π01⟩, ⟨π10, π11⟩⟩ : T(A×B) → T(A)×T(B).
inline MapTerm phi(const ObjType& a, const ObjType& b) {
    const ObjType dom = square(ObjType::prod(a, b));
    return pair4(project(dom, {0, 0}), project(dom, {0, 1}), project(dom, {1, 0}), project(dom, {1, 1}));
}

/// Inverse of φ : T(A)×T(B) → T(A×B). Same projection pattern on the swapped nesting.
inline MapTerm phi_inv(const ObjType& a, const ObjType& b) {
    const ObjType dom = ObjType::prod(square(a), square(b));
    return pair4(project(dom, {0, 0}), project(dom, {0, 1}), project(dom, {1, 0}), project(dom, {1, 1}));
}

/// A Kleisli arrow A → T(B), kept as its two components f0, f1 : A → B.
class KleisliMap {
public:
    KleisliMap(MapTerm f0, MapTerm f1) : f0_(std::move(f0)), f1_(std::move(f1)) {
        if (!(f0_.dom() == f1_.dom()) || !(f0_.cod() == f1_.cod()))
            throw TypeMismatch("kleisli components must share type: " + f0_.dom().to_string() + " -> " +
                               f0_.cod().to_string() + " vs " + f1_.dom().to_string() + " -> " +
                               f1_.cod().to_string());
    }

    /// Splits a term A → B×B into components; pair nodes are taken apart directly.
    static KleisliMap from_term(const MapTerm& f) {
        if (!f.cod().is_prod() || !(f.cod().left() == f.cod().right()))
            throw TypeMismatch("kleisli map needs codomain T(B), got " + f.cod().to_string());
        if (f.op() == Op::pair) return KleisliMap(f.first(), f.second());
        const ObjType& b = f.cod().left();
        return KleisliMap(mk_comp(mk_proj0(b, b), f), mk_comp(mk_proj1(b, b), f));
    }

    const ObjType& src() const noexcept { return f0_.dom(); }
    const ObjType& tgt() const noexcept { return f0_.cod(); }
    const MapTerm& f0() const noexcept { return f0_; }
    const MapTerm& f1() const noexcept { return f1_; }

    /// ⟨f0, f1⟩ : src → T(tgt).
    MapTerm term() const { return mk_pair(f0_, f1_); }

private:
    MapTerm f0_;
    MapTerm f1_;
};

inline KleisliMap kleisli_id(const ObjType& a) { return KleisliMap(mk_id(a), mk_zero(a, a)); }

/// π_0^T = ⟨π0, 0⟩.
inline KleisliMap kleisli_proj0(const ObjType& a, const ObjType& b) {
    return KleisliMap(mk_proj0(a, b), mk_zero(ObjType::prod(a, b), a));
}

/// π_1^T = ⟨π1, 0⟩.
inline KleisliMap kleisli_proj1(const ObjType& a, const ObjType& b) {
    return KleisliMap(mk_proj1(a, b), mk_zero(ObjType::prod(a, b), b));
}

/// ⟨f, g⟩^T = φ ∘ ⟨f, g⟩.
inline KleisliMap kleisli_pair(const KleisliMap& f, const KleisliMap& g) {
    if (!(f.src() == g.src())) throw TypeMismatch("kleisli_pair: sources differ");
    const MapTerm t = mk_comp(phi_inv(f.tgt(), g.tgt()), mk_pair(f.term(), g.term()));
    return KleisliMap::from_term(t);
}

/// f +^T g = ⟨f0 + g0, f1 + g1⟩.
inline KleisliMap kleisli_plus(const KleisliMap& f, const KleisliMap& g) {
    return KleisliMap(mk_plus(f.f0(), g.f0()), mk_plus(f.f1(), g.f1()));
}

inline KleisliMap kleisli_zero(const ObjType& a, const ObjType& b) { return KleisliMap(mk_zero(a, b), mk_zero(a, b)); }

/// !^T_A = 0 : A → T(⊤).
inline KleisliMap kleisli_bang(const ObjType& a) { return KleisliMap(mk_bang(a), mk_bang(a)); }

/// ε^T(f) = ⟨ε(f0), ε(f1)⟩.
inline KleisliMap kleisli_eps(const KleisliMap& f) { return KleisliMap(mk_eps(f.f0()), mk_eps(f.f1())); }

/// ∂^T[f] = ⟨∂[f0], ∂[f1]⟩, structurally.
inline KleisliMap kleisli_derive(const KleisliMap& f, const Model& model) {
    return KleisliMap(derive(f.f0(), model), derive(f.f1(), model));
}

/// ∂^T[f] as formal Diff nodes, evaluated by the model's own rule.
inline KleisliMap kleisli_diff_node(const KleisliMap& f) { return KleisliMap(mk_diff(f.f0()), mk_diff(f.f1())); }

/// g ∘^T f = ⟨g0 ∘ f0, ∂[g0] ∘ ⟨f0, f1⟩ + g1 ∘ (f0 ⊕ f1)⟩.
inline KleisliMap kleisli_compose(const KleisliMap& g, const KleisliMap& f, const Model& model) {
    if (!(f.tgt() == g.src()))
        throw TypeMismatch("kleisli_compose: " + f.tgt().to_string() + " does not match " + g.src().to_string());
    const MapTerm f0_oplus_f1 = mk_comp(oplus_term(f.tgt()), mk_pair(f.f0(), f.f1()));
    return KleisliMap(mk_comp(g.f0(), f.f0()),
                      mk_plus(mk_comp(derive(g.f0(), model), mk_pair(f.f0(), f.f1())), mk_comp(g.f1(), f0_oplus_f1)));
}

/// g ∘^T f = μ ∘ T(g) ∘ f, straight from the monad.
inline KleisliMap kleisli_compose_via_mu(const KleisliMap& g, const KleisliMap& f, const Model& model) {
    if (!(f.tgt() == g.src()))
        throw TypeMismatch("kleisli_compose: " + f.tgt().to_string() + " does not match " + g.src().to_string());
    return KleisliMap::from_term(mk_comp(mu(g.tgt()), mk_comp(tangent_map(g.term(), model), f.term())));
}

} // namespace deltacat
