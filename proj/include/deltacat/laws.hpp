#pragma once

#include <deltacat/diff.hpp>
#include <deltacat/errors.hpp>
#include <deltacat/eval.hpp>
#include <deltacat/harness.hpp>
#include <deltacat/model.hpp>
#include <deltacat/tangent.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace deltacat {

struct LawDef {
    std::string id;
    std::string suite;
    /// Reason the law does not apply to a model, if any.
    std::function<std::optional<std::string>(const Model&)> skip;
    std::function<void(Trial&)> run;
};

namespace laws {

inline Value P(Value a, Value b) { return Value::pair(std::move(a), std::move(b)); }

inline std::optional<std::string> always(const Model&) { return std::nullopt; }

inline std::optional<std::string> float_smooth_only(const Model& m) {
    if (m.family() == "smooth" && !m.exact()) return std::nullopt;
    return std::string("needs the floating-point smooth model");
}

inline std::optional<std::string> stream_only(const Model& m) {
    if (m.family() == "stream") return std::nullopt;
    return std::string("stream model only");
}

/// Linear sample for laws that assume linearity: drawn from the linear pool,
/// then confirmed by the sampled classifier. Unconfirmed samples are vacuous.
inline std::optional<MapTerm> linear_sample(Trial& t, const std::string& label, const ObjType& a, const ObjType& b,
                                            bool mixed = false) {
    GenOptions opts;
    opts.linear_only = !mixed || t.rng().chance(0.5);
    opts.allow_diff = !opts.linear_only;
    MapTerm f = (t.config().fixed_term && label == "f") ? t.note(label, *t.config().fixed_term)
                                                        : t.term(label, a, b, opts);
    if (!detail::check_linear(t.model(), f, 8, t.rng()).holds) {
        t.mark_vacuous();
        return std::nullopt;
    }
    return f;
}

inline std::optional<MapTerm> eps_linear_sample(Trial& t, const std::string& label, const ObjType& a,
                                                const ObjType& b) {
    GenOptions opts;
    opts.linear_only = t.rng().chance(0.5);
    MapTerm f = (t.config().fixed_term && label == "f") ? t.note(label, *t.config().fixed_term)
                                                        : t.term(label, a, b, opts);
    if (!detail::check_linear(t.model(), mk_eps(f), 8, t.rng()).holds) {
        t.mark_vacuous();
        return std::nullopt;
    }
    return f;
}

/// ∂[f](x,y) = f(y) at one fresh sample.
inline void expect_linear(Trial& t, const std::string& part, const MapTerm& f) {
    const Value x = t.point("x_" + part, f.dom());
    const Value y = t.point("y_" + part, f.dom());
    t.expect(part, f.cod(), t.eval(derive(f, t.model()), P(x, y)), t.eval(f, y));
}

inline void expect_eps_linear(Trial& t, const std::string& part, const MapTerm& f) {
    expect_linear(t, part, mk_eps(f));
}

/// Associator (A×B)×C → A×(B×C).
inline MapTerm assoc_map(const ObjType& a, const ObjType& b, const ObjType& c) {
    const ObjType dom = ObjType::prod(ObjType::prod(a, b), c);
    return mk_pair(project(dom, {0, 0}), mk_pair(project(dom, {1, 0}), mk_proj1(ObjType::prod(a, b), c)));
}

/// Inverse associator A×(B×C) → (A×B)×C.
inline MapTerm assoc_inv(const ObjType& a, const ObjType& b, const ObjType& c) {
    const ObjType dom = ObjType::prod(a, ObjType::prod(b, c));
    return mk_pair(mk_pair(mk_proj0(a, ObjType::prod(b, c)), project(dom, {0, 1})), project(dom, {1, 1}));
}

// ---- Kleisli helpers --------------------------------------------------------

struct KleisliCtx {
    Trial& t;
    const Model& m;

    KleisliMap map(const std::string& label, const ObjType& a, const ObjType& b, std::size_t depth) {
        const MapTerm f0 = t.term(label + "0", a, b, {}, depth);
        const MapTerm f1 = t.term(label + "1", a, b, {}, depth);
        return KleisliMap(f0, f1);
    }
    KleisliMap comp(const KleisliMap& g, const KleisliMap& f) { return kleisli_compose(g, f, m); }
    KleisliMap d(const KleisliMap& f) { return kleisli_derive(f, m); }
    Value at(const KleisliMap& f, const Value& c) { return t.eval(f.term(), c); }
    bool expect(const std::string& part, const KleisliMap& lhs, const KleisliMap& rhs, const Value& c) {
        return t.expect(part, square(lhs.tgt()), at(lhs, c), at(rhs, c));
    }
};

inline std::size_t kleisli_depth(const Trial& t) { return std::min<std::size_t>(t.depth(), 3); }
inline std::size_t element_depth(const Trial& t) { return std::min<std::size_t>(t.depth(), 2); }

// ---- causality ------------------------------------------------------------

/// Two inputs that agree up to a random index must give outputs that agree up
/// to the same index. Returns false and records the witness on violation.
inline bool causal_probe(Trial& t, const std::string& part, const MapTerm& f) {
    const Value a = t.point("a_" + part, f.dom());
    Value b = t.point("b_" + part, f.dom());
    std::size_t depth = 0;
    std::function<Value(const Value&, const Value&, std::size_t)> agree;
    agree = [&](const Value& x, const Value& y, std::size_t n) -> Value {
        if (x.is_pair()) return P(agree(x.first(), y.first(), n), agree(x.second(), y.second(), n));
        if (!x.is_leaf()) return x;
        StreamPrefix out = as_stream(y);
        depth = out.terms.size();
        const auto& src = as_stream(x).terms;
        for (std::size_t i = 0; i <= n && i < out.terms.size(); ++i) out.terms[i] = src[i];
        return Value::leaf(std::move(out));
    };
    agree(a, b, 0);
    if (depth == 0) return true;
    const std::size_t n = t.rng().index(depth);
    t.note("cut_" + part, int_value(static_cast<long long>(n)));
    b = agree(a, b, n);
    t.note("b'_" + part, b);
    const Value fa = t.eval(f, a);
    const Value fb = t.eval(f, b);
    std::function<Value(const Value&)> prefix = [&](const Value& v) -> Value {
        if (v.is_pair()) return P(prefix(v.first()), prefix(v.second()));
        if (!v.is_leaf()) return v;
        auto terms = as_stream(v).terms;
        terms.resize(n + 1);
        return stream_value(std::move(terms));
    };
    const Value pa = prefix(fa);
    const Value pb = prefix(fb);
    if (pa.to_string() == pb.to_string()) return true;
    t.fail(part + ": outputs agree up to the cut", pa.to_string(), pb.to_string(), "exact");
    return false;
}

// ---- the catalog ------------------------------------------------------------

inline std::vector<LawDef> build_catalog() {
    std::vector<LawDef> out;
    auto law = [&](std::string id, std::string suite, std::function<void(Trial&)> run,
                   std::function<std::optional<std::string>(const Model&)> skip = always) {
        out.push_back(LawDef{std::move(id), std::move(suite), std::move(skip), std::move(run)});
    };

    // -- cdc ------------------------------------------------------------------
    law("CD0", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const Value x = t.point("x", a), y = t.point("y", a);
        t.expect("f(x + e(y)) = f(x) + e(d[f](x,y))", b, t.eval(f, t.add(a, x, t.eps(a, y))),
                 t.add(b, t.eval(f, x), t.eps(b, t.eval(derive(f, t.model()), P(x, y)))));
    });
    law("CD1", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm g = t.term("g", a, b);
        const Value xy = P(t.point("x", a), t.point("y", a));
        const Value df = t.eval(mk_diff(f), xy);
        t.expect("d[f + g] = d[f] + d[g]", b, t.eval(mk_diff(mk_plus(f, g)), xy),
                 t.add(b, df, t.eval(mk_diff(g), xy)));
        t.expect("d[0] = 0", b, t.eval(mk_diff(mk_zero(a, b)), xy), t.zero(b));
        t.expect("d[e(f)] = e(d[f])", b, t.eval(mk_diff(mk_eps(f)), xy), t.eps(b, df));
    });
    law("CD2", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm df = derive(f, t.model());
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a);
        t.expect("d[f](x, y + z) = d[f](x, y) + d[f](x + e(y), z)", b, t.eval(df, P(x, t.add(a, y, z))),
                 t.add(b, t.eval(df, P(x, y)), t.eval(df, P(t.add(a, x, t.eps(a, y)), z))));
        t.expect("d[f](x, 0) = 0", b, t.eval(df, P(x, t.zero(a))), t.zero(b));
    });
    law("CD3", "cdc", [](Trial& t) {
        const ObjType a = t.obj(true), c = t.obj(true);
        const ObjType p = ObjType::prod(a, c);
        const Value x = t.point("x", a), y = t.point("y", a);
        t.expect("d[id](x, y) = y", a, t.eval(mk_diff(mk_id(a)), P(x, y)), y);
        const Value u = t.point("u", p), v = t.point("v", p);
        t.expect("d[p0](u, v) = p0(v)", a, t.eval(mk_diff(mk_proj0(a, c)), P(u, v)), v.first());
        t.expect("d[p1](u, v) = p1(v)", c, t.eval(mk_diff(mk_proj1(a, c)), P(u, v)), v.second());
    });
    law("CD4", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const ObjType c = t.obj(true);
        const MapTerm g = t.term("g", a, c);
        const Value xy = P(t.point("x", a), t.point("y", a));
        t.expect("d[<f, g>] = <d[f], d[g]>", ObjType::prod(b, c), t.eval(mk_diff(mk_pair(f, g)), xy),
                 P(t.eval(mk_diff(f), xy), t.eval(mk_diff(g), xy)));
        t.expect("d[!] = !", ObjType::unit(), t.eval(mk_diff(mk_bang(a)), xy), Value::unit());
    });
    law("CD5", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const ObjType c = t.obj();
        const MapTerm g = t.term("g", b, c);
        const Value x = t.point("x", a), y = t.point("y", a);
        t.expect("d[g o f](x, y) = d[g](f(x), d[f](x, y))", c, t.eval(mk_diff(mk_comp(g, f)), P(x, y)),
                 t.eval(mk_diff(g), P(t.eval(f, x), t.eval(mk_diff(f), P(x, y)))));
    });
    law("CD6", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm df = derive(f, t.model());
        const MapTerm ddf = derive(df, t.model());
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a);
        t.expect("d2[f]((x, y), (0, z)) = d[f](x + e(y), z)", b, t.eval(ddf, P(P(x, y), P(t.zero(a), z))),
                 t.eval(df, P(t.add(a, x, t.eps(a, y)), z)));
    });
    law("CD7", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm ddf = derive_n(f, 2, t.model());
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a);
        const Value o = t.zero(a);
        t.expect("d2[f]((x, y), (z, 0)) = d2[f]((x, z), (y, 0))", b, t.eval(ddf, P(P(x, y), P(z, o))),
                 t.eval(ddf, P(P(x, z), P(y, o))));
    });
    law("CD6a", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm df = derive(f, t.model());
        const MapTerm ddf = derive(df, t.model());
        const Value x = t.point("x", a), y = t.point("y", a);
        const Value o = t.zero(a);
        t.expect("d2[f]((x, 0), (0, y)) = d[f](x, y)", b, t.eval(ddf, P(P(x, o), P(o, y))), t.eval(df, P(x, y)));
    });
    law("CD7a", "cdc", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm ddf = derive_n(f, 2, t.model());
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a), w = t.point("w", a);
        t.expect("d2[f]((x, y), (z, w)) = d2[f]((x, z), (y, w))", b, t.eval(ddf, P(P(x, y), P(z, w))),
                 t.eval(ddf, P(P(x, z), P(y, w))));
    });

    // -- cad ------------------------------------------------------------------
    law("CAD1", "cad", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const Value x = t.point("x", a), y = t.point("y", a);
        t.expect("f(x (+) y) = f(x) (+) d[f](x, y)", b, t.eval(f, t.eval(oplus_term(a), P(x, y))),
                 t.eval(oplus_term(b), P(t.eval(f, x), t.eval(derive(f, t.model()), P(x, y)))));
    });
    law("CAD2", "cad", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm df = derive(f, t.model());
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a);
        const Value x_oplus_y = t.eval(oplus_term(a), P(x, y));
        t.expect("d[f](x, y + z) = d[f](x, y) + d[f](x (+) y, z)", b,
                 t.eval(df, P(x, t.eval(plus_point(a), P(y, z)))),
                 t.eval(plus_point(b), P(t.eval(df, P(x, y)), t.eval(df, P(x_oplus_y, z)))));
        t.expect("d[f](x, 0) = 0", b, t.eval(df, P(x, t.eval(zero_point(a), Value::unit()))),
                 t.eval(zero_point(b), Value::unit()));
    });
    law("CA_ACTION", "cad", [](Trial& t) {
        const ObjType a = t.obj(true);
        const MapTerm op = oplus_term(a);
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a);
        t.expect("x (+) (y + z) = (x (+) y) (+) z", a, t.eval(op, P(x, t.add(a, y, z))),
                 t.eval(op, P(t.eval(op, P(x, y)), z)));
        t.expect("x (+) 0 = x", a, t.eval(op, P(x, t.zero(a))), x);
    });
    law("CA_MONOID", "cad", [](Trial& t) {
        const ObjType a = t.obj(true);
        const MapTerm add = plus_point(a);
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a);
        t.expect("x + y = y + x", a, t.eval(add, P(x, y)), t.eval(add, P(y, x)));
        t.expect("(x + y) + z = x + (y + z)", a, t.eval(add, P(t.eval(add, P(x, y)), z)),
                 t.eval(add, P(x, t.eval(add, P(y, z)))));
        t.expect("x + 0 = x", a, t.eval(add, P(x, t.eval(zero_point(a), Value::unit()))), x);
    });

    // -- lemmas ---------------------------------------------------------------
    law("LEM_DEPS_i", "lemmas", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm df = derive(f, t.model());
        const Value x = t.point("x", a), u = t.point("u", a);
        t.expect("d[f](x, e(u)) = e(d[f](x, u))", b, t.eval(df, P(x, t.eps(a, u))), t.eval(mk_eps(df), P(x, u)));
    });
    law("LEM_DEPS_ii", "lemmas", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm df = derive(f, t.model());
        const Value x = t.point("x", a), u = t.point("u", a), v = t.point("v", a);
        t.expect("d[f](x, u + v) = d[f](x, u) + d[f](x + e2(u), v)", b, t.eval(df, P(x, t.add(a, u, v))),
                 t.add(b, t.eval(df, P(x, u)), t.eval(df, P(t.add(a, x, t.eps(a, t.eps(a, u))), v))));
    });
    law("LEM_DEPS_iii", "lemmas", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType& a = f.dom();
        const MapTerm ddf = derive_n(f, 2, t.model());
        const Value x = t.point("x", a), u = t.point("u", a), v = t.point("v", a);
        const Value p = P(P(x, u), P(v, t.zero(a)));
        t.expect("e(d2[f])((x, u), (v, 0)) = e2(d2[f])((x, u), (v, 0))", f.cod(), t.eval(mk_eps(ddf), p),
                 t.eval(mk_eps(mk_eps(ddf)), p));
    });
    law("LIN_1", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj();
        const auto f = linear_sample(t, "f", a, b);
        if (!f) return;
        const Value x = t.point("x", f->dom());
        t.expect("e(f) = f o e(1)", f->cod(), t.eval(mk_eps(*f), x),
                 t.eval(mk_comp(*f, mk_eps(mk_id(f->dom()))), x));
    });
    law("LIN_2", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj();
        const auto f = linear_sample(t, "f", a, b);
        if (!f) return;
        const ObjType &da = f->dom(), &cb = f->cod();
        const Value x = t.point("x", da), y = t.point("y", da);
        t.expect("f(x + y) = f(x) + f(y)", cb, t.eval(*f, t.add(da, x, y)), t.add(cb, t.eval(*f, x), t.eval(*f, y)));
        t.expect("f(0) = 0", cb, t.eval(*f, t.zero(da)), t.zero(cb));
    });
    law("LIN_3", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(true), b = t.obj(true);
        expect_linear(t, "id", mk_id(a));
        expect_linear(t, "p0", mk_proj0(a, b));
        expect_linear(t, "p1", mk_proj1(a, b));
        expect_linear(t, "zero", mk_zero(a, b));
    });
    law("LIN_4", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj(), c = t.obj();
        const auto f = linear_sample(t, "f", a, b);
        if (!f) return;
        const auto g = linear_sample(t, "g", f->dom(), f->cod());
        const auto h = linear_sample(t, "h", f->cod(), c);
        if (!g || !h) return;
        expect_linear(t, "f + g", mk_plus(*f, *g));
        expect_linear(t, "h o f", mk_comp(*h, *f));
        expect_linear(t, "<f, g>", mk_pair(*f, *g));
    });
    law("LIN_5", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj(), c = t.obj(), e = t.obj();
        const auto f = linear_sample(t, "f", a, b);
        if (!f) return;
        const MapTerm g = t.term("g", f->cod(), c);
        const auto k = linear_sample(t, "k", c, e);
        if (!k) return;
        const Value x = t.point("x", f->dom()), y = t.point("y", f->dom());
        const MapTerm kgf = mk_comp(*k, mk_comp(g, *f));
        t.expect("d[k o g o f](x, y) = k(d[g](f(x), f(y)))", k->cod(), t.eval(derive(kgf, t.model()), P(x, y)),
                 t.eval(*k, t.eval(derive(g, t.model()), P(t.eval(*f, x), t.eval(*f, y)))));
    });
    law("LIN_6", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(true), b = t.obj(true), c = t.obj(true);
        struct Iso {
            std::string name;
            MapTerm to;
            MapTerm from;
        };
        std::vector<Iso> isos = {
            {"swap", swap_map(a, b), swap_map(b, a)},
            {"assoc", assoc_map(a, b, c), assoc_inv(a, b, c)},
            {"phi", phi(a, b), phi_inv(a, b)},
        };
        for (const char* name : {"neg", "mat_b"}) {
            if (const auto* p = t.model().find_prim(name); p && p->dom == p->cod) {
                const MapTerm m = mk_prim(p->name, p->dom, p->cod);
                isos.push_back({name, m, m});
            }
        }
        for (const auto& iso : isos) {
            const Value x = t.point("x_" + iso.name, iso.to.dom());
            const Value y = t.point("y_" + iso.name, iso.to.cod());
            t.expect(iso.name + ": from o to = 1", iso.to.dom(), t.eval(iso.from, t.eval(iso.to, x)), x);
            t.expect(iso.name + ": to o from = 1", iso.to.cod(), t.eval(iso.to, t.eval(iso.from, y)), y);
            if (!detail::check_linear(t.model(), iso.to, 4, t.rng()).holds) continue;
            expect_linear(t, iso.name + " inverse", iso.from);
        }
    });
    law("LIN_7", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(true);
        expect_linear(t, "(+)", oplus_term(a));
        expect_linear(t, "+", plus_point(a));
    });
    law(
        "LIN_8", "lemmas",
        [](Trial& t) {
            const MapTerm f = t.subject();
            const ObjType& a = f.dom();
            expect_linear(t, "d[f] o <0, 1>", mk_comp(derive(f, t.model()), mk_pair(mk_zero(a, a), mk_id(a))));
        },
        [](const Model& m) -> std::optional<std::string> {
            if (m.eps_kind() == EpsKind::zero) return std::nullopt;
            return std::string("requires a nilpotent infinitesimal extension; e is not nilpotent in this model");
        });
    law("EPSLIN_1", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj();
        const auto f = eps_linear_sample(t, "f", a, b);
        if (!f) return;
        const ObjType &da = f->dom(), &cb = f->cod();
        const Value x = t.point("x", da), y = t.point("y", da);
        t.expect("f(x + e(y)) = f(x) + e(f(y))", cb, t.eval(*f, t.add(da, x, t.eps(da, y))),
                 t.add(cb, t.eval(*f, x), t.eval(mk_eps(*f), y)));
    });
    law("EPSLIN_2", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj();
        const auto f = linear_sample(t, "f", a, b);
        if (!f) return;
        expect_eps_linear(t, "e(f) linear", *f);
    });
    law("EPSLIN_3", "lemmas", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj(), c = t.obj();
        const auto f = eps_linear_sample(t, "f", a, b);
        if (!f) return;
        const auto g = eps_linear_sample(t, "g", f->dom(), f->cod());
        const auto h = eps_linear_sample(t, "h", f->cod(), c);
        if (!g || !h) return;
        expect_eps_linear(t, "f + g", mk_plus(*f, *g));
        expect_eps_linear(t, "h o f", mk_comp(*h, *f));
        expect_eps_linear(t, "<f, g>", mk_pair(*f, *g));
    });

    // -- monad ----------------------------------------------------------------
    law("MONAD_UNIT_L", "monad", [](Trial& t) {
        const ObjType a = t.obj(true);
        const Value p = t.point("p", square(a));
        t.expect("mu o eta_T = 1", square(a), t.eval(mk_comp(mu(a), eta(square(a))), p), p);
    });
    law("MONAD_UNIT_R", "monad", [](Trial& t) {
        const ObjType a = t.obj(true);
        const Value p = t.point("p", square(a));
        t.expect("mu o T(eta) = 1", square(a), t.eval(mk_comp(mu(a), tangent_map(eta(a), t.model())), p), p);
    });
    law("MONAD_ASSOC", "monad", [](Trial& t) {
        const ObjType a = t.obj(true);
        const Value p = t.point("p", square(square(square(a))));
        t.expect("mu o T(mu) = mu o mu_T", square(a), t.eval(mk_comp(mu(a), tangent_map(mu(a), t.model())), p),
                 t.eval(mk_comp(mu(a), mu(square(a))), p));
    });
    law("MU_LINEAR", "monad", [](Trial& t) {
        const ObjType a = t.obj(true);
        const MapTerm m = mu(a);
        const Value x = t.point("x", m.dom()), y = t.point("y", m.dom());
        t.expect("d[mu] = mu o p1", square(a), t.eval(derive(m, t.model()), P(x, y)), t.eval(m, y));
    });
    law("T_FUNCTOR", "monad", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const ObjType c = t.obj();
        const MapTerm g = t.term("g", b, c);
        const Value p = t.point("p", square(a));
        const Model& m = t.model();
        t.expect("T(g o f) = T(g) o T(f)", square(c), t.eval(tangent_map(mk_comp(g, f), m), p),
                 t.eval(mk_comp(tangent_map(g, m), tangent_map(f, m)), p));
        t.expect("T(1) = 1", square(a), t.eval(tangent_map(mk_id(a), m), p), p);
    });
    law("ETA_NATURAL", "monad", [](Trial& t) {
        const MapTerm f = t.subject();
        const Value x = t.point("x", f.dom());
        t.expect("T(f) o eta = eta o f", square(f.cod()),
                 t.eval(mk_comp(tangent_map(f, t.model()), eta(f.dom())), x),
                 t.eval(mk_comp(eta(f.cod()), f), x));
    });
    law("MU_NATURAL", "monad", [](Trial& t) {
        const MapTerm f = t.subject();
        const Model& m = t.model();
        const Value p = t.point("p", square(square(f.dom())));
        const MapTerm tf = tangent_map(f, m);
        t.expect("mu o TT(f) = T(f) o mu", square(f.cod()), t.eval(mk_comp(mu(f.cod()), tangent_map(tf, m)), p),
                 t.eval(mk_comp(tf, mu(f.dom())), p));
    });

    // -- kleisli --------------------------------------------------------------
    // Laws between Kleisli maps are checked on generalized elements: random
    // Kleisli maps C → T(A) standing for the arguments, evaluated at c ∈ C.
    law("KLEISLI_CD0", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(), b = t.obj(), c = t.obj(true);
        const KleisliMap f = k.map("f", a, b, kleisli_depth(t));
        const KleisliMap x = k.map("x", c, a, element_depth(t)), y = k.map("y", c, a, element_depth(t));
        const Value pc = t.point("c", c);
        k.expect("f o (x + e(y)) = f o x + e(d[f] o <x, y>)", k.comp(f, kleisli_plus(x, kleisli_eps(y))),
                 kleisli_plus(k.comp(f, x), kleisli_eps(k.comp(k.d(f), kleisli_pair(x, y)))), pc);
    });
    law("KLEISLI_CD1", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(), b = t.obj(), c = t.obj(true);
        const KleisliMap f = k.map("f", a, b, kleisli_depth(t)), g = k.map("g", a, b, kleisli_depth(t));
        const KleisliMap xy = kleisli_pair(k.map("x", c, a, element_depth(t)), k.map("y", c, a, element_depth(t)));
        const Value pc = t.point("c", c);
        k.expect("d[f + g] = d[f] + d[g]", k.comp(kleisli_diff_node(kleisli_plus(f, g)), xy),
                 k.comp(kleisli_plus(kleisli_diff_node(f), kleisli_diff_node(g)), xy), pc);
        k.expect("d[0] = 0", k.comp(kleisli_diff_node(kleisli_zero(a, b)), xy), kleisli_zero(c, b), pc);
        k.expect("d[e(f)] = e(d[f])", k.comp(kleisli_diff_node(kleisli_eps(f)), xy),
                 k.comp(kleisli_eps(kleisli_diff_node(f)), xy), pc);
    });
    law("KLEISLI_CD2", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(), b = t.obj(), c = t.obj(true);
        const KleisliMap df = k.d(k.map("f", a, b, kleisli_depth(t)));
        const std::size_t ed = element_depth(t);
        const KleisliMap x = k.map("x", c, a, ed), y = k.map("y", c, a, ed), z = k.map("z", c, a, ed);
        const Value pc = t.point("c", c);
        k.expect("d[f] o <x, y + z> = d[f] o <x, y> + d[f] o <x + e(y), z>",
                 k.comp(df, kleisli_pair(x, kleisli_plus(y, z))),
                 kleisli_plus(k.comp(df, kleisli_pair(x, y)),
                              k.comp(df, kleisli_pair(kleisli_plus(x, kleisli_eps(y)), z))),
                 pc);
        k.expect("d[f] o <x, 0> = 0", k.comp(df, kleisli_pair(x, kleisli_zero(c, a))), kleisli_zero(c, b), pc);
    });
    law("KLEISLI_CD3", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(true), a2 = t.obj(true), c = t.obj(true);
        const ObjType p = ObjType::prod(a, a2);
        const std::size_t ed = element_depth(t);
        const Value pc = t.point("c", c);
        const KleisliMap xy = kleisli_pair(k.map("x", c, a, ed), k.map("y", c, a, ed));
        k.expect("d[1] = p1", k.comp(kleisli_diff_node(kleisli_id(a)), xy), k.comp(kleisli_proj1(a, a), xy), pc);
        const KleisliMap uv = kleisli_pair(k.map("u", c, p, ed), k.map("v", c, p, ed));
        k.expect("d[p0] = p0 o p1", k.comp(kleisli_diff_node(kleisli_proj0(a, a2)), uv),
                 k.comp(k.comp(kleisli_proj0(a, a2), kleisli_proj1(p, p)), uv), pc);
        k.expect("d[p1] = p1 o p1", k.comp(kleisli_diff_node(kleisli_proj1(a, a2)), uv),
                 k.comp(k.comp(kleisli_proj1(a, a2), kleisli_proj1(p, p)), uv), pc);
    });
    law("KLEISLI_CD4", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(), b = t.obj(true), b2 = t.obj(true), c = t.obj(true);
        const KleisliMap f = k.map("f", a, b, kleisli_depth(t)), g = k.map("g", a, b2, kleisli_depth(t));
        const KleisliMap xy = kleisli_pair(k.map("x", c, a, element_depth(t)), k.map("y", c, a, element_depth(t)));
        const Value pc = t.point("c", c);
        k.expect("d[<f, g>] = <d[f], d[g]>", k.comp(kleisli_diff_node(kleisli_pair(f, g)), xy),
                 k.comp(kleisli_pair(kleisli_diff_node(f), kleisli_diff_node(g)), xy), pc);
        k.expect("d[!] = !", k.comp(kleisli_diff_node(kleisli_bang(a)), xy),
                 k.comp(kleisli_bang(square(a)), xy), pc);
    });
    law("KLEISLI_CD5", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(), b = t.obj(), e = t.obj(), c = t.obj(true);
        const KleisliMap f = k.map("f", a, b, kleisli_depth(t)), g = k.map("g", b, e, kleisli_depth(t));
        const KleisliMap xy = kleisli_pair(k.map("x", c, a, element_depth(t)), k.map("y", c, a, element_depth(t)));
        const Value pc = t.point("c", c);
        const KleisliMap rhs =
            k.comp(kleisli_diff_node(g), kleisli_pair(k.comp(f, kleisli_proj0(a, a)), kleisli_diff_node(f)));
        k.expect("d[g o f] = d[g] o <f o p0, d[f]>", k.comp(kleisli_diff_node(k.comp(g, f)), xy), k.comp(rhs, xy),
                 pc);
    });
    auto second_order = [](const std::string& id, int variant) {
        return [id, variant](Trial& t) {
            KleisliCtx k{t, t.model()};
            const ObjType a = t.obj(), b = t.obj(), c = t.obj(true);
            const KleisliMap df = k.d(k.map("f", a, b, kleisli_depth(t)));
            const KleisliMap ddf = k.d(df);
            const std::size_t ed = element_depth(t);
            const KleisliMap x = k.map("x", c, a, ed), y = k.map("y", c, a, ed), z = k.map("z", c, a, ed);
            const KleisliMap o = kleisli_zero(c, a);
            const Value pc = t.point("c", c);
            auto at2 = [&](const KleisliMap& p, const KleisliMap& q, const KleisliMap& r, const KleisliMap& s) {
                return k.comp(ddf, kleisli_pair(kleisli_pair(p, q), kleisli_pair(r, s)));
            };
            switch (variant) {
            case 6:
                k.expect("d2[f] o <<x, y>, <0, z>> = d[f] o <x + e(y), z>", at2(x, y, o, z),
                         k.comp(df, kleisli_pair(kleisli_plus(x, kleisli_eps(y)), z)), pc);
                break;
            case 7:
                k.expect("d2[f] o <<x, y>, <z, 0>> = d2[f] o <<x, z>, <y, 0>>", at2(x, y, z, o), at2(x, z, y, o),
                         pc);
                break;
            case 60:
                k.expect("d2[f] o <<x, 0>, <0, y>> = d[f] o <x, y>", at2(x, o, o, y), k.comp(df, kleisli_pair(x, y)),
                         pc);
                break;
            default: {
                const KleisliMap w = k.map("w", c, a, ed);
                k.expect("d2[f] o <<x, y>, <z, w>> = d2[f] o <<x, z>, <y, w>>", at2(x, y, z, w), at2(x, z, y, w), pc);
            }
            }
        };
    };
    law("KLEISLI_CD6", "kleisli", second_order("KLEISLI_CD6", 6));
    law("KLEISLI_CD7", "kleisli", second_order("KLEISLI_CD7", 7));
    law("KLEISLI_CD6a", "kleisli", second_order("KLEISLI_CD6a", 60));
    law("KLEISLI_CD7a", "kleisli", second_order("KLEISLI_CD7a", 70));
    law("KLEISLI_UNIT", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(true), b = t.obj(true);
        const KleisliMap f = k.map("f", a, b, kleisli_depth(t));
        const Value x = t.point("x", a);
        k.expect("f o 1 = f", k.comp(f, kleisli_id(a)), f, x);
        k.expect("1 o f = f", k.comp(kleisli_id(b), f), f, x);
    });
    law("KLEISLI_ASSOC", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(), b = t.obj(), c = t.obj(), e = t.obj();
        const std::size_t d = kleisli_depth(t);
        const KleisliMap f = k.map("f", a, b, d), g = k.map("g", b, c, d), h = k.map("h", c, e, d);
        const Value x = t.point("x", a);
        k.expect("h o (g o f) = (h o g) o f", k.comp(h, k.comp(g, f)), k.comp(k.comp(h, g), f), x);
    });
    law("KLEISLI_COMPOSE_DEF", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(true), b = t.obj(), c = t.obj(true);
        const KleisliMap f = k.map("f", a, b, kleisli_depth(t)), g = k.map("g", b, c, kleisli_depth(t));
        const Value x = t.point("x", a);
        k.expect("worked formula = mu o T(g) o f", k.comp(g, f), kleisli_compose_via_mu(g, f, t.model()), x);
    });
    law("KLEISLI_T_DIFF_PHI", "kleisli", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType& a = f.dom();
        const Model& m = t.model();
        const Value p = t.point("p", ObjType::prod(square(a), square(a)));
        t.expect("T(d[f]) o phi = d[T(f)]", square(f.cod()),
                 t.eval(mk_comp(tangent_map(derive(f, m), m), phi_inv(a, a)), p),
                 t.eval(derive(tangent_map(f, m), m), p));
    });
    law("KLEISLI_PROD", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(true), b = t.obj(true), c = t.obj(true);
        const KleisliMap f = k.map("f", c, a, kleisli_depth(t)), g = k.map("g", c, b, kleisli_depth(t));
        const Value x = t.point("x", c);
        const KleisliMap fg = kleisli_pair(f, g);
        k.expect("p0 o <f, g> = f", k.comp(kleisli_proj0(a, b), fg), f, x);
        k.expect("p1 o <f, g> = g", k.comp(kleisli_proj1(a, b), fg), g, x);
        k.expect("<f, g> = <<f0, g0>, <f1, g1>>", fg,
                 KleisliMap(mk_pair(f.f0(), g.f0()), mk_pair(f.f1(), g.f1())), x);
    });
    law("KLEISLI_LEFT_ADD", "kleisli", [](Trial& t) {
        KleisliCtx k{t, t.model()};
        const ObjType a = t.obj(), b = t.obj(), c = t.obj();
        const std::size_t d = kleisli_depth(t);
        const KleisliMap h = k.map("h", a, b, d), f = k.map("f", b, c, d), g = k.map("g", b, c, d);
        const Value x = t.point("x", a);
        k.expect("(f + g) o h = f o h + g o h", k.comp(kleisli_plus(f, g), h),
                 kleisli_plus(k.comp(f, h), k.comp(g, h)), x);
        k.expect("0 o h = 0", k.comp(kleisli_zero(b, c), h), kleisli_zero(a, c), x);
    });
    law("PHI_ISO", "kleisli", [](Trial& t) {
        const ObjType a = t.obj(true), b = t.obj(true);
        const Value p = t.point("p", square(ObjType::prod(a, b)));
        const Value q = t.point("q", ObjType::prod(square(a), square(b)));
        t.expect("phi^-1 o phi = 1", square(ObjType::prod(a, b)),
                 t.eval(mk_comp(phi_inv(a, b), phi(a, b)), p), p);
        t.expect("phi o phi^-1 = 1", ObjType::prod(square(a), square(b)), t.eval(mk_comp(phi(a, b), phi_inv(a, b)), q),
                 q);
    });
    law("PHI_NATURAL", "kleisli", [](Trial& t) {
        const ObjType a = t.obj(), a2 = t.obj(), b = t.obj(), b2 = t.obj();
        const MapTerm f = t.term("f", a, b), g = t.term("g", a2, b2);
        const Model& m = t.model();
        const Value p = t.point("p", square(ObjType::prod(a, a2)));
        t.expect("(T(f) x T(g)) o phi = phi o T(f x g)", ObjType::prod(square(b), square(b2)),
                 t.eval(mk_comp(product_map(tangent_map(f, m), tangent_map(g, m)), phi(a, a2)), p),
                 t.eval(mk_comp(phi(b, b2), tangent_map(product_map(f, g), m)), p));
    });
    law("KLEISLI_LINEAR", "kleisli", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj();
        GenOptions opts;
        opts.linear_only = t.rng().chance(0.5);
        const KleisliMap f(t.term("f0", a, b, opts, kleisli_depth(t)), t.term("f1", a, b, opts, kleisli_depth(t)));
        const Model& m = t.model();
        // Kleisli linearity: d[f] = f o p1 as Kleisli maps, sampled.
        const KleisliMap lhs = kleisli_derive(f, m);
        const KleisliMap rhs = kleisli_compose(f, kleisli_proj1(a, a), m);
        bool kleisli_linear = true;
        for (int i = 0; i < 8 && kleisli_linear; ++i) {
            const Value p = P(m.sample(a, t.rng()), m.sample(a, t.rng()));
            kleisli_linear = m.equal(square(b), eval(m, lhs.term(), p), eval(m, rhs.term(), p));
        }
        const bool components_linear = detail::check_linear(m, f.f0(), 8, t.rng()).holds &&
                                       detail::check_linear(m, f.f1(), 8, t.rng()).holds;
        t.expect_flag("Kleisli-linear iff both components linear", kleisli_linear, components_linear);
    });

    // -- linearity ------------------------------------------------------------
    law("LIN_CLASSIFY", "linearity", [](Trial& t) {
        for (const Primitive* p : t.model().primitives()) {
            if (!p->in_pool) continue;
            const MapTerm f = mk_prim(p->name, p->dom, p->cod);
            const bool sampled = detail::check_linear(t.model(), f, 8, t.rng()).holds;
            t.expect_flag(p->name + ": sampled linearity matches the primitive's declared linearity", sampled,
                          p->linear);
        }
    });
    law("LIN_IMPLIES_ADDITIVE", "linearity", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj();
        const auto f = linear_sample(t, "f", a, b, true);
        if (!f) return;
        const ObjType &da = f->dom(), &cb = f->cod();
        const Value x = t.point("x", da), y = t.point("y", da);
        t.expect("f(x + y) = f(x) + f(y)", cb, t.eval(*f, t.add(da, x, y)), t.add(cb, t.eval(*f, x), t.eval(*f, y)));
        t.expect("f(0) = 0", cb, t.eval(*f, t.zero(da)), t.zero(cb));
    });
    law("LIN_IMPLIES_EPS_COMMUTE", "linearity", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj();
        const auto f = linear_sample(t, "f", a, b, true);
        if (!f) return;
        const Value x = t.point("x", f->dom());
        t.expect("f(e(x)) = e(f(x))", f->cod(), t.eval(*f, t.eps(f->dom(), x)), t.eps(f->cod(), t.eval(*f, x)));
    });
    law("LIN_CLOSURE", "linearity", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj(), c = t.obj();
        const auto f = linear_sample(t, "f", a, b, true);
        if (!f) return;
        const auto g = linear_sample(t, "g", f->dom(), f->cod(), true);
        const auto h = linear_sample(t, "h", f->cod(), c, true);
        if (!g || !h) return;
        expect_linear(t, "f + g", mk_plus(*f, *g));
        expect_linear(t, "h o f", mk_comp(*h, *f));
        expect_linear(t, "<f, g>", mk_pair(*f, *g));
        expect_linear(t, "(+)", oplus_term(a));
        expect_linear(t, "+", plus_point(a));
    });
    law("EPSLIN_CLOSURE", "linearity", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj(), c = t.obj();
        const auto f = eps_linear_sample(t, "f", a, b);
        if (!f) return;
        const auto g = eps_linear_sample(t, "g", f->dom(), f->cod());
        const auto h = eps_linear_sample(t, "h", f->cod(), c);
        if (!g || !h) return;
        expect_eps_linear(t, "f + g", mk_plus(*f, *g));
        expect_eps_linear(t, "h o f", mk_comp(*h, *f));
        expect_eps_linear(t, "<f, g>", mk_pair(*f, *g));
    });
    law(
        "EPSLIN_AGREES", "linearity",
        [](Trial& t) {
            GenOptions opts;
            opts.linear_only = t.rng().chance(0.5);
            const MapTerm f = t.subject("f", opts);
            const bool lin = detail::check_linear(t.model(), f, 8, t.rng()).holds;
            const bool eps_lin = detail::check_linear(t.model(), mk_eps(f), 8, t.rng()).holds;
            t.expect_flag("e-linear iff linear", eps_lin, lin);
        },
        [](const Model& m) -> std::optional<std::string> {
            if (m.eps_kind() == EpsKind::identity) return std::nullopt;
            return std::string("e-linear and linear coincide only when e is the identity");
        });
    law(
        "ALL_EPSLIN", "linearity",
        [](Trial& t) {
            const MapTerm f = t.subject();
            expect_eps_linear(t, "e(f) linear", f);
        },
        [](const Model& m) -> std::optional<std::string> {
            if (m.eps_kind() == EpsKind::zero) return std::nullopt;
            return std::string("every map is e-linear only when e = 0");
        });
    law(
        "ALL_LINEAR", "linearity",
        [](Trial& t) {
            const MapTerm f = t.subject();
            expect_linear(t, "d[f] = f o p1", f);
        },
        [](const Model& m) -> std::optional<std::string> {
            if (m.family() == "module") return std::nullopt;
            return std::string("only module models make every map linear");
        });

    // -- model-specific ---------------------------------------------------------
    law(
        "DIFF_ORACLE", "model",
        [](Trial& t) {
            const MapTerm f = t.subject();
            const ObjType &a = f.dom(), &b = f.cod();
            const Model& m = t.model();
            const Value x = t.point("x", a), y = t.point("y", a);
            Value expected;
            switch (m.diff_rule()) {
            case DiffRule::finite_difference: expected = m.sub(b, t.eval(f, m.add(a, x, y)), t.eval(f, x)); break;
            case DiffRule::linear: expected = t.eval(f, y); break;
            default: {
                // Head from the full sum, tail from the truncated shift.
                const Value full = m.sub(b, t.eval(f, m.add(a, x, y)), t.eval(f, x));
                const Value tail = m.sub(b, t.eval(f, m.add(a, x, m.eps(a, y))), t.eval(f, x));
                expected = m.splice_head(b, full, tail);
            }
            }
            t.expect("derive(f)(x, y) = defining formula", b, t.eval(derive(f, m), P(x, y)), expected);
        },
        [](const Model& m) -> std::optional<std::string> {
            if (m.diff_rule() != DiffRule::symbolic) return std::nullopt;
            return std::string("derivatives in this model are symbolic; see SMOOTH_CENTRAL_DIFF");
        });
    law(
        "PRIM_DERIV_AGREE", "model",
        [](Trial& t) {
            for (const Primitive* p : t.model().primitives()) {
                if (!p->derivative) continue;
                const MapTerm f = mk_prim(p->name, p->dom, p->cod);
                const Value x = t.point("x_" + p->name, p->dom), y = t.point("y_" + p->name, p->dom);
                t.expect(p->name + ": registered derivative = semantic d", p->cod, t.eval(*p->derivative, P(x, y)),
                         t.eval(mk_diff(f), P(x, y)));
            }
        },
        [](const Model& m) -> std::optional<std::string> {
            if (m.diff_rule() != DiffRule::symbolic) return std::nullopt;
            return std::string("registered derivatives are the only semantics of d here");
        });
    law(
        "SMOOTH_CENTRAL_DIFF", "model",
        [](Trial& t) {
            const Model& m = t.model();
            constexpr double h = 1e-6;
            for (const Primitive* p : m.primitives()) {
                if (!p->in_pool) continue;
                const MapTerm f = mk_prim(p->name, p->dom, p->cod);
                const Value x = t.point("x_" + p->name, p->dom), y = t.point("y_" + p->name, p->dom);
                const Value sym = t.eval(derive(f, m), P(x, y));
                std::function<Value(const Value&, const Value&, double)> shift = [&](const Value& u, const Value& v,
                                                                                     double s) -> Value {
                    if (u.is_pair()) return P(shift(u.first(), v.first(), s), shift(u.second(), v.second(), s));
                    if (u.is_unit()) return u;
                    return real_value(std::get<double>(u.as_leaf()) + s * std::get<double>(v.as_leaf()));
                };
                const Value hi = t.eval(f, shift(x, y, h)), lo = t.eval(f, shift(x, y, -h));
                const double num = (std::get<double>(hi.as_leaf()) - std::get<double>(lo.as_leaf())) / (2 * h);
                const double s = std::get<double>(sym.as_leaf());
                // Rounding in the quotient is about ulp(f)/h; the floor keeps
                // near-zero derivatives from failing on that alone.
                const double floor = 1e-8 * (1 + std::max(std::fabs(std::get<double>(hi.as_leaf())),
                                                          std::fabs(std::get<double>(lo.as_leaf()))));
                if (std::fabs(s - num) > std::max(1e-5 * std::max(std::fabs(s), std::fabs(num)), floor))
                    t.fail(p->name + ": d[f](x, y) = central difference", sym.to_string(), format_real(num),
                           "central(h=1e-6, rel=1e-5)");
            }
        },
        float_smooth_only);
    law("LCA_LEFT_ADD", "model", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj(), c = t.obj();
        const MapTerm h = t.term("h", a, b), f = t.term("f", b, c), g = t.term("g", b, c);
        const Value x = t.point("x", a);
        t.expect("(f + g) o h = f o h + g o h", c, t.eval(mk_comp(mk_plus(f, g), h), x),
                 t.add(c, t.eval(mk_comp(f, h), x), t.eval(mk_comp(g, h), x)));
        t.expect("0 o h = 0", c, t.eval(mk_comp(mk_zero(b, c), h), x), t.zero(c));
    });
    law("LCA_PROJ_ADD", "model", [](Trial& t) {
        const ObjType a = t.obj(), b1 = t.obj(true), b2 = t.obj(true);
        const ObjType b = ObjType::prod(b1, b2);
        const MapTerm f = t.term("f", a, b), g = t.term("g", a, b);
        const Value x = t.point("x", a);
        const Value fx = t.eval(f, x), gx = t.eval(g, x);
        const Value s = t.eval(mk_plus(f, g), x);
        t.expect("p0 o (f + g) = p0 o f + p0 o g", b1, s.first(), t.add(b1, fx.first(), gx.first()));
        t.expect("p1 o (f + g) = p1 o f + p1 o g", b2, s.second(), t.add(b2, fx.second(), gx.second()));
    });
    law("EPS_MORPHISM", "model", [](Trial& t) {
        const ObjType a = t.obj(), b = t.obj(), c = t.obj();
        const MapTerm f = t.term("f", a, b), g = t.term("g", b, c), f2 = t.term("f'", a, b);
        const Value x = t.point("x", a);
        const Value v = t.point("v", b), w = t.point("w", b);
        t.expect("e(v + w) = e(v) + e(w)", b, t.eps(b, t.add(b, v, w)), t.add(b, t.eps(b, v), t.eps(b, w)));
        t.expect("e(0) = 0", b, t.eps(b, t.zero(b)), t.zero(b));
        t.expect("e(g o f) = e(g) o f", c, t.eval(mk_eps(mk_comp(g, f)), x), t.eval(mk_comp(mk_eps(g), f), x));
        t.expect("e(f + f') = e(f) + e(f')", b, t.eval(mk_eps(mk_plus(f, f2)), x),
                 t.eval(mk_plus(mk_eps(f), mk_eps(f2)), x));
    });
    law(
        "STREAM_CAUSAL", "model",
        [](Trial& t) {
            if (t.config().fixed_term) {
                causal_probe(t, "f", t.note("f", *t.config().fixed_term));
                return;
            }
            for (const Primitive* p : t.model().primitives()) {
                if (!p->in_pool) continue;
                if (!causal_probe(t, p->name, mk_prim(p->name, p->dom, p->cod))) return;
            }
            const ObjType a = t.obj(), b = t.obj();
            causal_probe(t, "f", t.term("f", a, b));
        },
        stream_only);
    law(
        "STREAM_TRUNCATION", "model",
        [](Trial& t) {
            const ObjType s = t.model().base();
            const Value a = t.point("a", s);
            auto terms = as_stream(a).terms;
            terms[0] = 0;
            const Value expected = stream_value(std::move(terms));
            t.expect("z(a) = (0, a_1, a_2, ...)", s, t.eps(s, a), expected);
            t.expect("e(1)(a) = z(a)", s, t.eval(mk_eps(mk_id(s)), a), expected);
        },
        stream_only);
    law(
        "STREAM_OPLUS", "model",
        [](Trial& t) {
            const ObjType s = t.model().base();
            const Value a = t.point("a", s), b = t.point("b", s);
            auto terms = as_stream(a).terms;
            const auto& bt = as_stream(b).terms;
            for (std::size_t i = 1; i < terms.size(); ++i) terms[i] += bt[i];
            t.expect("(a (+) b) = (a_0, a_1 + b_1, ...)", s, t.eval(oplus_term(s), P(a, b)),
                     stream_value(std::move(terms)));
        },
        stream_only);

    // -- control --------------------------------------------------------------
    // Additivity in the second argument without the e-shift. Holds when e = 0,
    // fails in general.
    law("CD2_additive_violation", "control", [](Trial& t) {
        const MapTerm f = t.subject();
        const ObjType &a = f.dom(), &b = f.cod();
        const MapTerm df = derive(f, t.model());
        const Value x = t.point("x", a), y = t.point("y", a), z = t.point("z", a);
        t.expect("d[f](x, y + z) = d[f](x, y) + d[f](x, z)", b, t.eval(df, P(x, t.add(a, y, z))),
                 t.add(b, t.eval(df, P(x, y)), t.eval(df, P(x, z))));
    });

    return out;
}

} // namespace laws

/// Every registered law, grouped by suite in a fixed order.
inline const std::vector<LawDef>& law_catalog() {
    static const std::vector<LawDef> catalog = laws::build_catalog();
    return catalog;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"cdc",       "cad",   "lemmas",  "monad",
                                                   "kleisli", "linearity", "model", "control"};
    return names;
}

inline const LawDef& find_law(const std::string& id) {
    for (const auto& def : law_catalog())
        if (def.id == id) return def;
    throw UnknownLaw(id);
}

namespace detail {

struct TrialOutcome {
    std::optional<Witness> failure;
    bool vacuous = false;
};

inline TrialOutcome run_trial(const LawDef& def, const Model& model, const LawConfig& config, std::size_t i) {
    Trial t(model, Rng::substream(config.seed, def.id, model.name(), i), config);
    try {
        def.run(t);
    } catch (const std::exception& e) {
        t.fail(std::string("evaluation error: ") + e.what(), "", "", "exact");
    }
    return {t.failure(), t.vacuous() && !t.failure()};
}

} // namespace detail

/// Runs `config.trials` independent trials of one law. Each trial draws from
/// its own substream of (seed, law, model, trial index), so the report does
/// not depend on `config.threads`.
inline LawReport check_law(const Model& model, const std::string& law_id, const LawConfig& config = {}) {
    const LawDef& def = find_law(law_id);
    LawReport r;
    r.law = def.id;
    r.suite = def.suite;
    r.model = model.name();
    r.seed = config.seed;
    r.trials = config.trials;
    r.depth = config.depth;
    const auto start = std::chrono::steady_clock::now();
    if (auto reason = def.skip(model)) {
        r.trials = 0;
        r.skipped = std::move(*reason);
        return r;
    }
    std::vector<detail::TrialOutcome> outcomes(config.trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.trials)));
    if (workers == 1) {
        for (std::size_t i = 0; i < config.trials; ++i) outcomes[i] = detail::run_trial(def, model, config, i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < config.trials; i += workers)
                    outcomes[i] = detail::run_trial(def, model, config, i);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& o : outcomes) {
        if (o.failure) {
            if (!r.witness) r.witness = std::move(o.failure);
            ++r.failures;
        } else if (o.vacuous) {
            ++r.vacuous;
        }
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Laws of a suite, or of every suite except "control" for "all".
inline std::vector<std::string> suite_laws(const std::string& suite) {
    std::vector<std::string> ids;
    bool known = suite == "all";
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw UnknownLaw("suite " + suite);
    for (const auto& def : law_catalog())
        if (def.suite == suite || (suite == "all" && def.suite != "control")) ids.push_back(def.id);
    return ids;
}

inline std::vector<LawReport> check_suite(const Model& model, const std::string& suite, const LawConfig& config = {}) {
    std::vector<LawReport> out;
    for (const auto& id : suite_laws(suite)) out.push_back(check_law(model, id, config));
    return out;
}

/// Causality of one stream map, sampled.
inline LawReport stream_causality_check(const Model& model, const MapTerm& f, std::size_t trials = 200,
                                        std::uint64_t seed = 42) {
    LawConfig config;
    config.trials = trials;
    config.seed = seed;
    config.fixed_term = f;
    return check_law(model, "STREAM_CAUSAL", config);
}

} // namespace deltacat
