#include <deltacat/document.hpp>
#include <deltacat/eval.hpp>
#include <deltacat/models.hpp>
#include <deltacat/tangent.hpp>

#include <gtest/gtest.h>

using namespace deltacat;

namespace {

const ObjType Z = ObjType::base("Z");

Value pr(Value a, Value b) { return Value::pair(std::move(a), std::move(b)); }
Value iv(long long v) { return int_value(v); }

} // namespace

TEST(Tangent, FunctorOnSquare) {
    const Model m = make_model("findiff");
    const MapTerm t = tangent_map(m.prim_term("sq"), m);
    EXPECT_EQ(t.dom(), square(Z));
    // T(sq)(3, 2) = (9, 25 - 9)
    EXPECT_EQ(eval(m, t, pr(iv(3), iv(2))).to_string(), "(9 16)");
}

TEST(Tangent, UnitAndMultiplication) {
    const Model m = make_model("findiff");
    EXPECT_EQ(eval(m, eta(Z), iv(7)).to_string(), "(7 0)");
    // mu(((a, b), (c, d))) = (a, c + b + e(d)); e = id here.
    EXPECT_EQ(eval(m, mu(Z), pr(pr(iv(1), iv(2)), pr(iv(3), iv(4)))).to_string(), "(1 9)");
    const Model s = make_model("smooth:exact");
    const ObjType R = ObjType::base("R");
    const Value p = parse_value(s, square(square(R)), "((1 2) (3 4))");
    EXPECT_EQ(eval(s, mu(R), p).to_string(), "(1 5)");
}

TEST(Tangent, PhiSwapsNesting) {
    const Model m = make_model("findiff");
    const Value p = pr(pr(iv(1), iv(2)), pr(iv(3), iv(4)));
    EXPECT_EQ(eval(m, phi(Z, Z), p).to_string(), "((1 3) (2 4))");
    EXPECT_EQ(eval(m, phi_inv(Z, Z), eval(m, phi(Z, Z), p)).to_string(), p.to_string());
}

TEST(Kleisli, ComponentsAndPairing) {
    const Model m = make_model("findiff");
    const KleisliMap f(m.prim_term("sq"), m.prim_term("inc"));
    EXPECT_EQ(f.src(), Z);
    EXPECT_EQ(f.tgt(), Z);
    const KleisliMap g = KleisliMap::from_term(mk_comp(eta(Z), m.prim_term("cube")));
    EXPECT_EQ(eval(m, g.term(), iv(2)).to_string(), "(8 0)");
    // <f, g>^T = <<f0, g0>, <f1, g1>>
    EXPECT_EQ(eval(m, kleisli_pair(f, g).term(), iv(2)).to_string(), "((4 8) (3 0))");
    EXPECT_THROW(KleisliMap(m.prim_term("sq"), m.prim_term("mul")), TypeMismatch);
    EXPECT_THROW(KleisliMap::from_term(m.prim_term("sq")), TypeMismatch);
}

TEST(Kleisli, WorkedCompositionByHand) {
    // f = <sq, inc>, g = <cube, times3> in findiff, at x = 2:
    //   f(2) = (4, 3)
    //   (g o f)_0 = cube(4) = 64
    //   (g o f)_1 = d[cube](4, 3) + times3(4 + 3) = (343 - 64) + 21 = 300
    const Model m = make_model("findiff");
    const KleisliMap f(m.prim_term("sq"), m.prim_term("inc"));
    const KleisliMap g(m.prim_term("cube"), m.prim_term("times3"));
    EXPECT_EQ(eval(m, kleisli_compose(g, f, m).term(), iv(2)).to_string(), "(64 300)");
    EXPECT_EQ(eval(m, kleisli_compose_via_mu(g, f, m).term(), iv(2)).to_string(), "(64 300)");
    const MapTerm diag = mk_pair(mk_id(Z), mk_id(Z));
    EXPECT_THROW(kleisli_compose(g, KleisliMap(diag, diag), m), TypeMismatch);
}

TEST(Kleisli, IdentityDerivativeIsProjection) {
    const Model m = make_model("findiff");
    const Value xy = pr(iv(5), iv(-2));
    EXPECT_EQ(eval(m, kleisli_derive(kleisli_id(Z), m).term(), xy).to_string(),
              eval(m, kleisli_proj1(Z, Z).term(), xy).to_string());
}

TEST(Kleisli, EpsVanishesInSmooth) {
    const Model m = make_model("smooth");
    const ObjType R = ObjType::base("R");
    const KleisliMap f(m.prim_term("sin"), m.prim_term("cos"));
    EXPECT_EQ(eval(m, kleisli_eps(f).term(), real_value(0.3)).to_string(), "(0.0 0.0)");
    EXPECT_EQ(kleisli_derive(f, m).src(), square(R));
}
