#include <deltacat/document.hpp>
#include <deltacat/eval.hpp>
#include <deltacat/generate.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace deltacat;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class E>
E expect_error(const std::string& src) {
    try {
        parse_document(src);
    } catch (const E& e) {
        return e;
    }
    ADD_FAILURE() << "no error for: " << src;
    throw std::runtime_error("unreachable");
}

} // namespace

TEST(Document, ParsesDefinitionsAndAliases) {
    const TermDocument doc = parse_document(R"(
        (model findiff)
        (object P (prod Z Z))
        (def sq4 (comp (prim sq) (prim sq)))
        (def swap (pair (p1 Z Z) (p0 Z Z)))
        (def sw (comp swap (id P)))
    )");
    EXPECT_EQ(doc.model().name(), "findiff");
    ASSERT_EQ(doc.definitions().size(), 3u);
    EXPECT_EQ(eval(doc.model(), doc.term("sq4"), int_value(3)).to_string(), "81");
    EXPECT_EQ(doc.term("sw").dom(), ObjType::prod(ObjType::base("Z"), ObjType::base("Z")));
    EXPECT_EQ(doc.objects().front().first, "P");
    EXPECT_THROW(doc.term("missing"), UnknownName);
}

TEST(Document, ForwardReferencesResolve) {
    const TermDocument doc = parse_document("(model findiff)\n(def b (comp a a))\n(def a (prim inc))\n");
    EXPECT_EQ(eval(doc.model(), doc.term("b"), int_value(1)).to_string(), "3");
    EXPECT_EQ(doc.definitions().front().name, "b");
}

TEST(Document, IdentityLikePairing) {
    const TermDocument doc = parse_document("(model findiff)\n(def p (pair (p0 Z Z) (p1 Z Z)))");
    const Model& m = doc.model();
    const Value v = parse_value(m, doc.term("p").dom(), "(4 -5)");
    EXPECT_EQ(eval(m, doc.term("p"), v).to_string(), v.to_string());
}

TEST(Document, TypeErrorsAreLocated) {
    const auto e = expect_error<SourceTypeMismatch>("(model findiff)\n(def bad (comp (prim sq) (pair (id Z) (id Z))))");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_NE(std::string(e.what()).find("expected Z, got (prod Z Z)"), std::string::npos);
}

TEST(Document, NameErrorsAreLocated) {
    auto e = expect_error<UnknownName>("(model findiff)\n(def f (prim nope))");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 14u);
    e = expect_error<UnknownName>("(model findiff)\n(def f (id Q))");
    EXPECT_EQ(e.column(), 12u);
    e = expect_error<UnknownName>("(model findiff)\n(def f (comp g (id Z)))");
    EXPECT_EQ(e.column(), 14u);
}

TEST(Document, SyntaxErrors) {
    auto e = expect_error<SyntaxError>("(model findiff)\n(def f (comp (prim sq)");
    EXPECT_EQ(e.line(), 2u);
    expect_error<SyntaxError>("(model findiff)\n(def f (comp (prim sq)))");
    expect_error<SyntaxError>("(model findiff)\n(def f (frob Z))");
    expect_error<SyntaxError>("(model findiff)\n(def f (id Z))\n(def f (id Z))");
    expect_error<SyntaxError>("(model findiff)\n(def f g)\n(def g f)");
    expect_error<SyntaxError>("(def f (id Z))");
    expect_error<SyntaxError>("(model findiff)\n(model smooth)");
    expect_error<SyntaxError>("(model findiff)\n(object Z (prod Z Z))");
    EXPECT_THROW(parse_document("(model nope)"), UnknownModel);
}

TEST(Document, ModelOverride) {
    EXPECT_EQ(parse_document("(def f (id R))", std::string("smooth")).model().name(), "smooth");
    EXPECT_THROW(parse_document("(model findiff)", std::string("smooth")), SyntaxError);
    EXPECT_NO_THROW(parse_document("(model findiff)", std::string("findiff")));
}

TEST(Document, CanonicalDocumentsRoundTrip) {
    const std::string canon =
        "(model findiff)\n(object P (prod Z Z))\n(def sq4 (comp sq sq))\n(def sq (prim sq))\n(def s (comp (prim sub) (id P)))\n";
    EXPECT_EQ(print_document(parse_document(canon)), canon);
    for (const char* f : {"findiff.dc", "smooth.dc", "stream.dc", "module.dc"}) {
        const TermDocument doc = parse_document(slurp(std::string(DELTACAT_SAMPLES_DIR) + "/" + f));
        const std::string printed = print_document(doc);
        EXPECT_EQ(print_document(parse_document(printed)), printed) << f;
    }
}

TEST(Document, PrintThenParseIsIdentityOnTerms) {
    for (const char* name : {"findiff", "smooth", "module:r=1", "stream"}) {
        const Model m = make_model(name);
        Rng rng(2024);
        for (int i = 0; i < 250; ++i) {
            const ObjType a = sample_obj(m, rng, true);
            const ObjType b = sample_obj(m, rng, true);
            const MapTerm f = sample_term(m, a, b, 4, rng);
            const MapTerm g = parse_term(m, print_term(f));
            ASSERT_TRUE(structural_eq(f, g)) << print_term(f);
        }
    }
}

TEST(Document, ParseTypeAndTerm) {
    const Model m = make_model("findiff");
    EXPECT_EQ(parse_type(m, "(prod Z (prod unit Z))").to_string(), "(prod Z (prod unit Z))");
    EXPECT_THROW(parse_type(m, "(prod Z)"), SyntaxError);
    EXPECT_EQ(print_term(parse_term(m, "(diff (eps (prim sq)))")), "(diff (eps (prim sq)))");
}
