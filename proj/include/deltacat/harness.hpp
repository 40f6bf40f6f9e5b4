#pragma once

#include <deltacat/diff.hpp>
#include <deltacat/errors.hpp>
#include <deltacat/eval.hpp>
#include <deltacat/format.hpp>
#include <deltacat/generate.hpp>
#include <deltacat/model.hpp>
#include <deltacat/rng.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace deltacat {

struct LawConfig {
    std::uint64_t seed = 42;
    std::size_t trials = 200;
    std::size_t depth = 4;
    /// When set, laws about a single map use this term instead of sampling one.
    std::optional<MapTerm> fixed_term;
    /// Worker threads per law. Results do not depend on this.
    unsigned threads = 1;
};

/// First failing sample of a law.
struct Witness {
    std::string part;
    /// Named terms involved, printed in the term-file syntax.
    std::string terms;
    /// Named input values.
    std::string input;
    std::string lhs;
    std::string rhs;
    std::string mode;
};

struct LawReport {
    std::string law;
    std::string suite;
    std::string model;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t depth = 0;
    std::size_t failures = 0;
    /// Trials whose sample did not meet the law's hypothesis (e.g. a sampled
    /// map that turned out not to be linear).
    std::size_t vacuous = 0;
    std::optional<Witness> witness;
    std::optional<std::string> skipped;
    double elapsed_ms = 0;

    bool ok() const { return failures == 0; }
};

/// State of one trial: the RNG substream, the samples drawn so far (for the
/// witness) and the first failed comparison.
class Trial {
public:
    Trial(const Model& model, Rng rng, const LawConfig& config) : model_(model), rng_(std::move(rng)), config_(config) {}

    const Model& model() const { return model_; }
    Rng& rng() { return rng_; }
    const LawConfig& config() const { return config_; }
    std::size_t depth() const { return config_.depth; }

    ObjType obj(bool allow_unit = false) { return sample_obj(model_, rng_, allow_unit); }

    MapTerm term(const std::string& label, const ObjType& a, const ObjType& b, const GenOptions& opts = {},
                 std::optional<std::size_t> depth = std::nullopt) {
        return note(label, sample_term(model_, a, b, depth.value_or(config_.depth), rng_, opts));
    }

    /// The map a single-map law is about: the configured term, or a sample.
    MapTerm subject(const std::string& label = "f", const GenOptions& opts = {}) {
        if (config_.fixed_term) return note(label, *config_.fixed_term);
        const ObjType a = obj();
        const ObjType b = obj();
        return term(label, a, b, opts);
    }

    Value point(const std::string& label, const ObjType& obj) { return note(label, model_.sample(obj, rng_)); }

    MapTerm note(const std::string& label, MapTerm f) {
        append(terms_, label + " = " + print_term(f));
        return f;
    }

    Value note(const std::string& label, Value v) {
        append(input_, label + " = " + v.to_string());
        return v;
    }

    Value eval(const MapTerm& f, const Value& x) const { return deltacat::eval(model_, f, x); }
    Value add(const ObjType& o, const Value& a, const Value& b) const { return model_.add(o, a, b); }
    Value eps(const ObjType& o, const Value& a) const { return model_.eps(o, a); }
    Value zero(const ObjType& o) const { return model_.zero(o); }

    /// Compares both sides with the model's equality; keeps the first failure.
    bool expect(const std::string& part, const ObjType& obj, const Value& lhs, const Value& rhs) {
        if (failure_) return false;
        if (model_.equal(obj, lhs, rhs)) return true;
        fail(part, lhs.to_string(), rhs.to_string(), model_.algebra().comparison_mode());
        return false;
    }

    bool expect_flag(const std::string& part, bool lhs, bool rhs) {
        if (failure_) return false;
        if (lhs == rhs) return true;
        fail(part, lhs ? "true" : "false", rhs ? "true" : "false", "exact");
        return false;
    }

    void fail(const std::string& part, std::string lhs, std::string rhs, std::string mode) {
        if (failure_) return;
        failure_ = Witness{part, terms_, input_, std::move(lhs), std::move(rhs), std::move(mode)};
    }

    void mark_vacuous() { vacuous_ = true; }

    const std::optional<Witness>& failure() const { return failure_; }
    bool vacuous() const { return vacuous_; }

private:
    static void append(std::string& out, const std::string& s) {
        if (!out.empty()) out += "; ";
        out += s;
    }

    const Model& model_;
    Rng rng_;
    const LawConfig& config_;
    std::string terms_;
    std::string input_;
    std::optional<Witness> failure_;
    bool vacuous_ = false;
};

// ---- linearity ------------------------------------------------------------

struct Classification {
    bool holds = true;
    std::optional<Witness> witness;
};

namespace detail {

/// Checks ∂[f](x,y) = f(y) at `trials` sampled points.
inline Classification check_linear(const Model& m, const MapTerm& f, std::size_t trials, Rng& rng) {
    const MapTerm df = derive(f, m);
    const ObjType& a = f.dom();
    for (std::size_t i = 0; i < trials; ++i) {
        const Value x = m.sample(a, rng);
        const Value y = m.sample(a, rng);
        const Value lhs = eval(m, df, Value::pair(x, y));
        const Value rhs = eval(m, f, y);
        if (!m.equal(f.cod(), lhs, rhs)) {
            return {false, Witness{"d[f](x,y) = f(y)", "f = " + print_term(f),
                                   "x = " + x.to_string() + "; y = " + y.to_string(), lhs.to_string(),
                                   rhs.to_string(), m.algebra().comparison_mode()}};
        }
    }
    return {};
}

} // namespace detail

/// Sampled test of ∂[f] = f ∘ π1. A non-linear verdict carries a witness.
inline Classification classify_linear(const Model& m, const MapTerm& f, std::size_t trials = 16,
                                      std::uint64_t seed = 0) {
    Rng rng = Rng::substream(seed, "classify_linear", m.name(), 0);
    return detail::check_linear(m, f, trials, rng);
}

/// Sampled test of the linearity of ε(f).
inline Classification classify_eps_linear(const Model& m, const MapTerm& f, std::size_t trials = 16,
                                          std::uint64_t seed = 0) {
    Rng rng = Rng::substream(seed, "classify_eps_linear", m.name(), 0);
    return detail::check_linear(m, mk_eps(f), trials, rng);
}

inline bool is_linear(const Model& m, const MapTerm& f, std::size_t trials = 16) {
    return classify_linear(m, f, trials).holds;
}

inline bool is_eps_linear(const Model& m, const MapTerm& f, std::size_t trials = 16) {
    return classify_eps_linear(m, f, trials).holds;
}

} // namespace deltacat
