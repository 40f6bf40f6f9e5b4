#include <deltacat/document.hpp>
#include <deltacat/laws.hpp>
#include <deltacat/models.hpp>
#include <deltacat/report.hpp>

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace deltacat;

namespace {

LawConfig config(std::size_t trials, std::size_t depth = 4, std::uint64_t seed = 42) {
    LawConfig c;
    c.trials = trials;
    c.depth = depth;
    c.seed = seed;
    return c;
}

Value pr(Value a, Value b) { return Value::pair(std::move(a), std::move(b)); }

std::string jsonl(const std::vector<LawReport>& rs) {
    std::ostringstream out;
    write_jsonl(out, rs);
    return out.str();
}

} // namespace

TEST(Catalog, SuitesAndIds) {
    std::set<std::string> ids;
    for (const auto& def : law_catalog()) EXPECT_TRUE(ids.insert(def.id).second) << def.id;
    const auto cdc = suite_laws("cdc");
    EXPECT_EQ(cdc, (std::vector<std::string>{"CD0", "CD1", "CD2", "CD3", "CD4", "CD5", "CD6", "CD7", "CD6a", "CD7a"}));
    const auto all = suite_laws("all");
    EXPECT_EQ(std::count(all.begin(), all.end(), "CD2_additive_violation"), 0);
    EXPECT_EQ(suite_laws("control"), std::vector<std::string>{"CD2_additive_violation"});
    for (const char* s : {"LEM_DEPS_i", "LEM_DEPS_ii", "LEM_DEPS_iii", "LIN_1", "LIN_7", "LIN_8"})
        EXPECT_EQ(find_law(s).suite, "lemmas");
    EXPECT_THROW(find_law("CD9"), UnknownLaw);
    EXPECT_THROW(suite_laws("nope"), UnknownLaw);
}

TEST(CheckLaw, FindiffCD0Passes) {
    const LawReport r = check_law(make_model("findiff"), "CD0", config(500));
    EXPECT_EQ(r.failures, 0u);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_EQ(r.trials, 500u);
    EXPECT_EQ(r.model, "findiff");
    EXPECT_EQ(r.suite, "cdc");
}

TEST(CheckLaw, UnshiftedAdditivityFailsForSquare) {
    const Model m = make_model("findiff");
    LawConfig c = config(200);
    c.fixed_term = m.prim_term("sq");
    const LawReport r = check_law(m, "CD2_additive_violation", c);
    ASSERT_GT(r.failures, 0u);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(r.witness->terms.find("(prim sq)"), std::string::npos);
    // The hand example: d[sq](0, 2) = 4 but d[sq](0, 1) + d[sq](0, 1) = 2.
    const MapTerm d = derive(m.prim_term("sq"), m);
    EXPECT_EQ(eval(m, d, pr(int_value(0), int_value(2))).to_string(), "4");
    EXPECT_EQ(eval(m, d, pr(int_value(0), int_value(1))).to_string(), "1");
}

TEST(CheckLaw, UnshiftedAdditivityHoldsWhenEpsIsZero) {
    for (const char* name : {"smooth", "smooth:exact"}) {
        const LawReport r = check_law(make_model(name), "CD2_additive_violation", config(200));
        EXPECT_EQ(r.failures, 0u) << name;
        EXPECT_EQ(check_law(make_model(name), "CD2", config(200)).failures, 0u) << name;
    }
}

TEST(CheckLaw, SkippedLawsCarryReasons) {
    const LawReport r = check_law(make_model("findiff"), "LIN_8", config(10));
    ASSERT_TRUE(r.skipped.has_value());
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.trials, 0u);
    EXPECT_FALSE(check_law(make_model("smooth"), "LIN_8", config(50)).skipped.has_value());
    EXPECT_EQ(check_law(make_model("smooth"), "LIN_8", config(50)).failures, 0u);
    EXPECT_TRUE(check_law(make_model("findiff"), "STREAM_CAUSAL", config(5)).skipped.has_value());
}

TEST(CheckLaw, DeterministicAcrossRunsAndThreads) {
    const Model m = make_model("stream");
    LawConfig one = config(60);
    LawConfig four = one;
    four.threads = 4;
    const auto a = check_suite(m, "cdc", one);
    const auto b = check_suite(m, "cdc", one);
    const auto c = check_suite(m, "cdc", four);
    EXPECT_EQ(jsonl(a), jsonl(b));
    EXPECT_EQ(jsonl(a), jsonl(c));
    // A different seed draws different samples.
    EXPECT_NE(jsonl(a), jsonl(check_suite(m, "cdc", config(60, 4, 43))));
}

TEST(CheckLaw, ExceptionsBecomeWitnesses) {
    // smooth:exact has no sin, so a fixed term naming it cannot evaluate.
    const Model m = make_model("smooth:exact");
    LawConfig c = config(3);
    c.fixed_term = mk_prim("sin", m.base(), m.base());
    const LawReport r = check_law(m, "CD0", c);
    EXPECT_EQ(r.failures, 3u);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(r.witness->part.find("evaluation error: "), std::string::npos);
    EXPECT_NE(r.witness->part.find("'sin'"), std::string::npos);
}

TEST(Linearity, FindiffClassification) {
    const Model m = make_model("findiff");
    EXPECT_TRUE(is_linear(m, m.prim_term("times3")));
    EXPECT_TRUE(is_linear(m, m.prim_term("neg")));
    EXPECT_TRUE(is_linear(m, m.prim_term("sub")));
    const Classification sq = classify_linear(m, m.prim_term("sq"));
    EXPECT_FALSE(sq.holds);
    ASSERT_TRUE(sq.witness.has_value());
    // The witness must itself refute d[sq](x, y) = sq(y): (x + y)^2 - x^2 = y^2 only when x = 0 or y = 0.
    EXPECT_NE(sq.witness->lhs, sq.witness->rhs);
    EXPECT_FALSE(is_linear(m, m.prim_term("inc")));
    EXPECT_FALSE(is_linear(m, m.prim_term("abs")));
    EXPECT_EQ(eval(m, derive(m.prim_term("sq"), m), pr(int_value(1), int_value(1))).to_string(), "3");
}

TEST(Linearity, EpsLinearity) {
    const Model sm = make_model("smooth");
    EXPECT_TRUE(is_eps_linear(sm, sm.prim_term("sin")));
    EXPECT_TRUE(is_eps_linear(sm, sm.prim_term("cube")));
    EXPECT_FALSE(is_linear(sm, sm.prim_term("cube")));
    const Model fd = make_model("findiff");
    EXPECT_FALSE(is_eps_linear(fd, fd.prim_term("sq")));
    EXPECT_TRUE(is_eps_linear(fd, fd.prim_term("times3")));
}

TEST(Linearity, ModuleMapsAreAllLinear) {
    const Model m = make_model("module:r=2");
    for (const Primitive* p : m.primitives()) EXPECT_TRUE(is_linear(m, mk_prim(p->name, p->dom, p->cod))) << p->name;
    EXPECT_EQ(check_law(m, "ALL_LINEAR", config(200)).failures, 0u);
}

TEST(Stream, DelayIsAHomomorphismButNotLinear) {
    // delay(a) = (0, a_0, a_1, ...) is additive, yet d[delay](a, b)_1 reads
    // (a + z(b))_0 = a_0, so the b_0 contribution is lost.
    const Model m = make_model("stream:depth=4");
    const ObjType S = m.base();
    const MapTerm delay = m.prim_term("delay");
    const Value a = parse_value(m, S, "[1 2 3 4]");
    const Value b = parse_value(m, S, "[5 6 7 8]");
    EXPECT_EQ(eval(m, delay, m.add(S, a, b)).to_string(), m.add(S, eval(m, delay, a), eval(m, delay, b)).to_string());
    EXPECT_EQ(eval(m, mk_diff(delay), pr(a, b)).to_string(), "[0 0 6 7]");
    EXPECT_EQ(eval(m, delay, b).to_string(), "[0 5 6 7]");
    EXPECT_FALSE(is_linear(m, delay));
    EXPECT_TRUE(is_linear(m, m.prim_term("times3")));
}

TEST(Stream, HeadCoordinateBreaksShiftedAdditivity) {
    // With f = sq pointwise, a = 0, b = c = 1 (all indices):
    //   d[f](a, b + c)_0 = (0 + 2)^2 - 0 = 4
    //   d[f](a, b)_0 + d[f](a + z(b), c)_0 = 1 + ((0 + 1)^2 - 0) = 2
    // since z(b)_0 = 0. The tail indices agree.
    const Model m = make_model("stream:depth=3");
    const ObjType S = m.base();
    const MapTerm d = derive(m.prim_term("sq"), m);
    const Value zero = parse_value(m, S, "[0 0 0]");
    const Value one = parse_value(m, S, "[1 1 1]");
    const Value lhs = eval(m, d, pr(zero, m.add(S, one, one)));
    const Value rhs = m.add(S, eval(m, d, pr(zero, one)), eval(m, d, pr(m.add(S, zero, m.eps(S, one)), one)));
    EXPECT_EQ(lhs.to_string(), "[4 4 4]");
    EXPECT_EQ(rhs.to_string(), "[2 4 4]");
    // The harness finds the same defect on its own.
    LawConfig c = config(200);
    c.fixed_term = m.prim_term("sq");
    const LawReport r = check_law(m, "CD2", c);
    EXPECT_GT(r.failures, 0u);
    // Index-0-free laws still hold.
    EXPECT_EQ(check_law(m, "CD0", config(200)).failures, 0u);
    EXPECT_EQ(check_law(m, "CD7", config(200)).failures, 0u);
}

TEST(Stream, CausalityCheck) {
    Model m = make_model("stream");
    m.register_prim(make_lookahead_prim());
    for (const Primitive* p : m.primitives()) {
        const LawReport r = stream_causality_check(m, mk_prim(p->name, p->dom, p->cod), 200);
        if (p->name == "lookahead") {
            EXPECT_GT(r.failures, 0u);
            EXPECT_TRUE(r.witness.has_value());
        } else {
            EXPECT_EQ(r.failures, 0u) << p->name;
        }
    }
}

TEST(Reports, JsonRoundTrip) {
    const Model m = make_model("findiff");
    LawConfig c = config(20);
    c.fixed_term = m.prim_term("sq");
    const LawReport r = check_law(m, "CD2_additive_violation", c);
    const auto j = report_to_json(r);
    EXPECT_EQ(j["schema"], report_schema);
    EXPECT_FALSE(j.contains("elapsed_ms"));
    EXPECT_TRUE(report_to_json(r, true).contains("elapsed_ms"));
    const LawReport back = report_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(report_to_json(back).dump(), j.dump());
    EXPECT_EQ(back.witness->lhs, r.witness->lhs);
}

TEST(Reports, TableShowsWitness) {
    const Model m = make_model("findiff");
    LawConfig c = config(20);
    c.fixed_term = m.prim_term("sq");
    std::ostringstream out;
    write_table(out, {check_law(m, "CD2_additive_violation", c), check_law(m, "LIN_8", c)});
    const std::string s = out.str();
    EXPECT_NE(s.find("fail"), std::string::npos);
    EXPECT_NE(s.find("skipped"), std::string::npos);
    EXPECT_NE(s.find("lhs:"), std::string::npos);
    EXPECT_NE(s.find("2 laws, 1 failing, 1 skipped"), std::string::npos);
}
