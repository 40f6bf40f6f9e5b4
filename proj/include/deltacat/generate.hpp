#pragma once

#include <deltacat/errors.hpp>
#include <deltacat/model.hpp>
#include <deltacat/rng.hpp>
#include <deltacat/term.hpp>

#include <functional>
#include <vector>

namespace deltacat {

struct GenOptions {
    /// Draw only primitives flagged linear.
    bool linear_only = false;
    bool allow_diff = true;
    bool allow_eps = true;
    /// Probability of stopping early with a leaf at positive depth.
    double leaf_bias = 0.2;
};

/// Random object: the base, base×base, or (rarely, when allowed) unit.
inline ObjType sample_obj(const Model& model, Rng& rng, bool allow_unit = false) {
    const ObjType b = model.base();
    const std::size_t k = rng.weighted({3, 3, allow_unit ? 1u : 0u});
    if (k == 0) return b;
    if (k == 1) return ObjType::prod(b, b);
    return ObjType::unit();
}

namespace detail {

class TermSampler {
public:
    TermSampler(const Model& model, Rng& rng, const GenOptions& opts) : model_(model), rng_(rng), opts_(opts) {
        for (const Primitive* p : model_.primitives())
            if (p->in_pool && (!opts_.linear_only || p->linear)) pool_.push_back(p);
    }

    MapTerm leaf(const ObjType& a, const ObjType& b) {
        std::vector<std::function<MapTerm()>> options;
        std::vector<unsigned> weights;
        for (const Primitive* p : pool_) {
            if (p->dom == a && p->cod == b) {
                options.push_back([p] { return mk_prim(p->name, p->dom, p->cod); });
                weights.push_back(4);
            }
        }
        if (a == b) {
            options.push_back([a] { return mk_id(a); });
            weights.push_back(2);
        }
        if (a.is_prod() && a.left() == b) {
            options.push_back([a] { return mk_proj0(a.left(), a.right()); });
            weights.push_back(2);
        }
        if (a.is_prod() && a.right() == b) {
            options.push_back([a] { return mk_proj1(a.left(), a.right()); });
            weights.push_back(2);
        }
        if (b.is_unit()) {
            options.push_back([a] { return mk_bang(a); });
            weights.push_back(2);
        }
        options.push_back([a, b] { return mk_zero(a, b); });
        weights.push_back(1);
        return options[rng_.weighted(weights)]();
    }

    MapTerm term(const ObjType& a, const ObjType& b, std::size_t depth) {
        if (depth == 0 || rng_.chance(opts_.leaf_bias)) return leaf(a, b);
        const std::size_t d = depth - 1;
        enum Ctor { comp, pair, plus, eps, diff, proj };
        std::vector<unsigned> weights(6, 0);
        weights[comp] = 5;
        weights[plus] = 2;
        if (b.is_prod()) weights[pair] = 3;
        if (opts_.allow_eps) weights[eps] = 1;
        if (opts_.allow_diff) weights[diff] = 1;
        if (a.is_prod()) weights[proj] = 1;
        switch (static_cast<Ctor>(rng_.weighted(weights))) {
        case comp: {
            const ObjType mid = middle(a, b);
            MapTerm inner = term(a, mid, d);
            return mk_comp(term(mid, b, d), inner);
        }
        case pair: {
            MapTerm l = term(a, b.left(), d);
            return mk_pair(l, term(a, b.right(), d));
        }
        case plus: {
            MapTerm l = term(a, b, d);
            return mk_plus(l, term(a, b, d));
        }
        case eps: return mk_eps(term(a, b, d));
        case diff: {
            if (a.is_prod() && a.left() == a.right()) return mk_diff(term(a.left(), b, d));
            // Otherwise Diff sits under a composite, which costs a level.
            if (d == 0) return leaf(a, b);
            const ObjType c = model_.base();
            MapTerm arg = term(a, square(c), d);
            return mk_comp(mk_diff(term(c, b, d - 1)), arg);
        }
        case proj: {
            if (rng_.chance(0.5)) return mk_comp(term(a.left(), b, d), mk_proj0(a.left(), a.right()));
            return mk_comp(term(a.right(), b, d), mk_proj1(a.left(), a.right()));
        }
        }
        return leaf(a, b);
    }

private:
    ObjType middle(const ObjType& a, const ObjType& b) {
        const ObjType base = model_.base();
        switch (rng_.weighted({2, 2, 3, 2, 1})) {
        case 0: return a;
        case 1: return b;
        case 2: return base;
        case 3: return ObjType::prod(base, base);
        default: return ObjType::unit();
        }
    }

    const Model& model_;
    Rng& rng_;
    const GenOptions& opts_;
    std::vector<const Primitive*> pool_;
};

} // namespace detail

/// Random well-typed term A → B of constructor depth at most `depth`, built
/// from the model's primitive pool and every term constructor.
inline MapTerm sample_term(const Model& model, const ObjType& a, const ObjType& b, std::size_t depth, Rng& rng,
                           const GenOptions& opts = {}) {
    for (const auto& obj : {a, b}) {
        std::function<void(const ObjType&)> check = [&](const ObjType& o) {
            if (o.is_base() && !model.has_base(o.name()))
                throw NoGeneratorForType("model " + model.name() + " has no base object " + o.name());
            if (o.is_prod()) {
                check(o.left());
                check(o.right());
            }
        };
        check(obj);
    }
    detail::TermSampler sampler(model, rng, opts);
    return sampler.term(a, b, depth);
}

} // namespace deltacat
