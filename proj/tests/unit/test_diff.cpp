#include <deltacat/diff.hpp>
#include <deltacat/eval.hpp>
#include <deltacat/format.hpp>
#include <deltacat/models.hpp>

#include <gtest/gtest.h>

using namespace deltacat;

namespace {

const ObjType Z = ObjType::base("Z");
const ObjType ZZ = ObjType::prod(Z, Z);

Value iv(long long v) { return int_value(v); }
Value pr(Value a, Value b) { return Value::pair(std::move(a), std::move(b)); }

} // namespace

TEST(Derive, StructuralRules) {
    EXPECT_EQ(print_term(derive(mk_id(Z))), "(p1 Z Z)");
    EXPECT_EQ(print_term(derive(mk_proj0(Z, Z))), "(comp (p0 Z Z) (p1 (prod Z Z) (prod Z Z)))");
    EXPECT_EQ(print_term(derive(mk_zero(Z, ZZ))), "(zero (prod Z Z) (prod Z Z))");
    EXPECT_EQ(print_term(derive(mk_bang(Z))), "(bang (prod Z Z))");
    const MapTerm sq = mk_prim("sq", Z, Z);
    EXPECT_EQ(print_term(derive(sq)), "(diff (prim sq))");
    EXPECT_EQ(print_term(derive(mk_eps(sq))), "(eps (diff (prim sq)))");
    EXPECT_EQ(print_term(derive(mk_plus(sq, mk_id(Z)))), "(plus (diff (prim sq)) (p1 Z Z))");
    // Chain rule: d[g o f] = d[g] o <f o p0, d[f]>.
    EXPECT_EQ(print_term(derive(mk_comp(sq, sq))),
              "(comp (diff (prim sq)) (pair (comp (prim sq) (p0 Z Z)) (diff (prim sq))))");
}

TEST(Derive, RegisteredDerivativeReplacesDiffNode) {
    const Model m = make_model("findiff");
    EXPECT_EQ(print_term(derive(m.prim_term("times3"), m)), "(comp (prim times3) (p1 Z Z))");
    EXPECT_EQ(print_term(derive(m.prim_term("sq"), m)), "(diff (prim sq))");
}

TEST(Derive, SecondOrderType) {
    const MapTerm sq = mk_prim("sq", Z, Z);
    const MapTerm d2 = derive_n(sq, 2);
    EXPECT_EQ(d2.dom(), square(ZZ));
    EXPECT_EQ(d2.cod(), Z);
    EXPECT_EQ(derive_n(sq, 0).op(), Op::prim);
    EXPECT_EQ(derive_n(sq, 3).dom(), square(square(ZZ)));
}

TEST(Derive, SmoothDiffNodesExpandSymbolically) {
    const Model m = make_model("smooth");
    const MapTerm d = derive(mk_diff(m.prim_term("sq")), m);
    // No formal Diff node survives, so the term evaluates without a semantic rule.
    std::function<bool(const MapTerm&)> has_diff = [&](const MapTerm& t) {
        if (t.op() == Op::diff) return true;
        if (t.op() == Op::pair || t.op() == Op::comp || t.op() == Op::plus)
            return has_diff(t.first()) || has_diff(t.second());
        if (t.op() == Op::eps) return has_diff(t.first());
        return false;
    };
    EXPECT_FALSE(has_diff(d));
    // d2[sq]((x, u), (v, w)) = 2(uv + xw); at ((1, 2), (3, 0)) that is 12.
    const Value p = pr(pr(real_value(1), real_value(2)), pr(real_value(3), real_value(0)));
    EXPECT_DOUBLE_EQ(std::get<double>(eval(m, d, p).as_leaf()), 12.0);
}

TEST(Derive, FindiffSquareByHand) {
    // d[sq](x, y) = (x + y)^2 - x^2.
    const Model m = make_model("findiff");
    const MapTerm d = derive(m.prim_term("sq"), m);
    EXPECT_EQ(eval(m, d, pr(iv(1), iv(1))).to_string(), "3");
    EXPECT_EQ(eval(m, d, pr(iv(0), iv(2))).to_string(), "4");
    EXPECT_EQ(eval(m, d, pr(iv(-3), iv(5))).to_string(), "-5");
    // Second order, checked against the defining formula one level down:
    // d[d[sq]]((x,u),(v,w)) = d[sq](x+v, u+w) - d[sq](x, u).
    const MapTerm d2 = derive_n(m.prim_term("sq"), 2, m);
    const long long x = 2, u = -1, v = 3, w = 4;
    auto dsq = [](long long a, long long b) { return (a + b) * (a + b) - a * a; };
    EXPECT_EQ(eval(m, d2, pr(pr(iv(x), iv(u)), pr(iv(v), iv(w)))).to_string(),
              std::to_string(dsq(x + v, u + w) - dsq(x, u)));
}

TEST(Oplus, IsPlusOfEps) {
    const Model fd = make_model("findiff");
    EXPECT_EQ(eval(fd, oplus_term(Z), pr(iv(2), iv(5))).to_string(), "7");
    const Model sm = make_model("smooth");
    const ObjType R = ObjType::base("R");
    EXPECT_EQ(eval(sm, oplus_term(R), pr(real_value(2), real_value(5))).to_string(), "2.0");
    const Model st = make_model("stream:depth=4");
    const ObjType S = ObjType::base("S");
    EXPECT_EQ(eval(st, oplus_term(S), pr(stream_value({1, 2, 3, 4}), stream_value({10, 20, 30, 40}))).to_string(),
              "[1 22 33 44]");
    EXPECT_EQ(eval(fd, plus_point(Z), pr(iv(2), iv(5))).to_string(), "7");
    EXPECT_EQ(eval(fd, zero_point(ZZ), Value::unit()).to_string(), "(0 0)");
}
