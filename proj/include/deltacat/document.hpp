#pragma once

#include <deltacat/errors.hpp>
#include <deltacat/format.hpp>
#include <deltacat/model.hpp>
#include <deltacat/models.hpp>
#include <deltacat/sexpr.hpp>
#include <deltacat/term.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltacat {

struct Definition {
    std::string name;
    MapTerm term;
};

/// A parsed term file: the model it is written against, object aliases and
/// named terms. The source forms are kept so the document prints back as it
/// was written, references between definitions included.
class TermDocument {
public:
    const Model& model() const { return *model_; }
    std::shared_ptr<const Model> model_ptr() const { return model_; }
    const std::vector<std::pair<std::string, ObjType>>& objects() const { return objects_; }
    const std::vector<Definition>& definitions() const { return defs_; }
    const std::vector<SExpr>& forms() const { return forms_; }

    const MapTerm* find(const std::string& name) const {
        for (const auto& d : defs_)
            if (d.name == name) return &d.term;
        return nullptr;
    }

    const MapTerm& term(const std::string& name) const {
        if (const auto* t = find(name)) return *t;
        throw UnknownName(name, 0, 0);
    }

private:
    friend TermDocument parse_document(std::string_view, const std::optional<std::string>&, const ModelOptions&);

    std::shared_ptr<const Model> model_;
    std::vector<std::pair<std::string, ObjType>> objects_;
    std::vector<Definition> defs_;
    std::vector<SExpr> forms_;
};

namespace detail {

class Elaborator {
public:
    explicit Elaborator(const Model& model) : model_(model) {}

    std::map<std::string, ObjType> aliases;
    std::map<std::string, const SExpr*> pending;
    std::map<std::string, MapTerm> done;

    ObjType type(const SExpr& e) const {
        if (e.is_atom()) {
            if (e.text == "unit") return ObjType::unit();
            if (model_.has_base(e.text)) return ObjType::base(e.text);
            if (auto it = aliases.find(e.text); it != aliases.end()) return it->second;
            throw UnknownName(e.text, e.line, e.col);
        }
        if (e.head() == "prod") {
            arity(e, 2);
            return ObjType::prod(type(e.items[1]), type(e.items[2]));
        }
        throw SyntaxError("expected a type, got " + e.to_string(), e.line, e.col);
    }

    MapTerm term(const SExpr& e) {
        if (e.is_atom()) return reference(e);
        if (!e.is_list() || e.items.empty() || !e.items.front().is_atom())
            throw SyntaxError("expected a term, got " + e.to_string(), e.line, e.col);
        const std::string_view h = e.head();
        try {
            if (h == "id") return arity(e, 1), mk_id(type(e.items[1]));
            if (h == "p0") return arity(e, 2), mk_proj0(type(e.items[1]), type(e.items[2]));
            if (h == "p1") return arity(e, 2), mk_proj1(type(e.items[1]), type(e.items[2]));
            if (h == "zero") return arity(e, 2), mk_zero(type(e.items[1]), type(e.items[2]));
            if (h == "bang") return arity(e, 1), mk_bang(type(e.items[1]));
            if (h == "pair" || h == "comp" || h == "plus") {
                arity(e, 2);
                const MapTerm a = term(e.items[1]);
                const MapTerm b = term(e.items[2]);
                if (h == "pair") return mk_pair(a, b);
                if (h == "comp") return mk_comp(a, b);
                return mk_plus(a, b);
            }
            if (h == "eps") return arity(e, 1), mk_eps(term(e.items[1]));
            if (h == "diff") return arity(e, 1), mk_diff(term(e.items[1]));
            if (h == "prim") {
                arity(e, 1);
                const SExpr& n = e.items[1];
                if (!n.is_atom()) throw SyntaxError("expected a primitive name", n.line, n.col);
                const Primitive* p = model_.find_prim(n.text);
                if (!p) throw UnknownName(n.text, n.line, n.col);
                return mk_prim(p->name, p->dom, p->cod);
            }
        } catch (const SourceError&) {
            throw;
        } catch (const TypeMismatch& err) {
            throw SourceTypeMismatch(err.what(), e.line, e.col);
        }
        throw SyntaxError("unknown term constructor '" + std::string(h) + "'", e.line, e.col);
    }

private:
    static void arity(const SExpr& e, std::size_t n) {
        if (e.items.size() != n + 1)
            throw SyntaxError("'" + std::string(e.head()) + "' takes " + std::to_string(n) + " argument" +
                                  (n == 1 ? "" : "s"),
                              e.line, e.col);
    }

    /// A bare name refers to another definition, resolved on demand so
    /// definitions may appear in any order.
    MapTerm reference(const SExpr& e) {
        if (auto it = done.find(e.text); it != done.end()) return it->second;
        auto it = pending.find(e.text);
        if (it == pending.end()) throw UnknownName(e.text, e.line, e.col);
        if (!it->second) throw SyntaxError("cyclic definition through '" + e.text + "'", e.line, e.col);
        const SExpr* src = it->second;
        it->second = nullptr;
        MapTerm t = term(*src);
        done.emplace(e.text, t);
        return t;
    }

    const Model& model_;
};

inline const std::string& form_name(const SExpr& form, const char* what) {
    if (form.items.size() != 3 || !form.items[1].is_atom())
        throw SyntaxError(std::string("expected (") + what + " NAME ...)", form.line, form.col);
    return form.items[1].text;
}

} // namespace detail

/// Parses a term file. `model_override` supplies the model when the file has
/// no `(model ...)` form; if both are present they must agree.
inline TermDocument parse_document(std::string_view source, const std::optional<std::string>& model_override = {},
                                   const ModelOptions& opts = {}) {
    TermDocument doc;
    doc.forms_ = SExprReader(source).read_all();

    std::optional<std::string> model_name = model_override;
    for (const SExpr& form : doc.forms_) {
        if (form.head() != "model") continue;
        if (form.items.size() != 2 || !form.items[1].is_atom())
            throw SyntaxError("expected (model NAME)", form.line, form.col);
        const std::string& name = form.items[1].text;
        if (model_name && *model_name != name)
            throw SyntaxError("document is written for model '" + name + "', not '" + *model_name + "'", form.line,
                              form.col);
        model_name = name;
    }
    if (!model_name) throw SyntaxError("no (model NAME) form and no model given", 1, 1);
    doc.model_ = std::make_shared<const Model>(make_model(*model_name, opts));

    detail::Elaborator el(*doc.model_);
    std::vector<const SExpr*> def_forms;
    for (const SExpr& form : doc.forms_) {
        const std::string_view h = form.head();
        if (h == "model") continue;
        if (h == "object") {
            const std::string& name = detail::form_name(form, "object");
            if (el.aliases.count(name) || doc.model_->has_base(name) || name == "unit")
                throw SyntaxError("object '" + name + "' is already defined", form.line, form.col);
            const ObjType t = el.type(form.items[2]);
            el.aliases.emplace(name, t);
            doc.objects_.emplace_back(name, t);
        } else if (h == "def") {
            const std::string& name = detail::form_name(form, "def");
            if (el.pending.count(name)) throw SyntaxError("'" + name + "' is already defined", form.line, form.col);
            el.pending.emplace(name, &form.items[2]);
            def_forms.push_back(&form);
        } else {
            throw SyntaxError("expected (model ...), (object ...) or (def ...), got " + form.to_string(), form.line,
                              form.col);
        }
    }
    for (const SExpr* form : def_forms) {
        const std::string& name = form->items[1].text;
        SExpr ref;
        ref.text = name;
        ref.line = form->line;
        ref.col = form->col;
        // Resolving through a reference shares the cycle check with nested uses.
        doc.defs_.push_back(Definition{name, el.done.count(name) ? el.done.at(name) : el.term(ref)});
    }
    return doc;
}

/// Parses one term against a model, with no aliases or definitions in scope.
inline MapTerm parse_term(const Model& model, std::string_view source) {
    detail::Elaborator el(model);
    return el.term(SExprReader(source).read_one());
}

inline ObjType parse_type(const Model& model, std::string_view source) {
    detail::Elaborator el(model);
    return el.type(SExprReader(source).read_one());
}

/// Parses a point literal of type `obj`.
inline Value parse_value(const Model& model, const ObjType& obj, std::string_view source) {
    return model.parse_value(obj, SExprReader(source).read_one());
}

/// Canonical text: one form per line, single spaces, no comments.
inline std::string print_document(const TermDocument& doc) {
    std::string out;
    for (const SExpr& form : doc.forms()) out += form.to_string() + "\n";
    return out;
}

/// Value literal as accepted by the CLI. A bare base value is wrapped in
/// parentheses so every literal is a parenthesized tuple.
inline std::string print_point(const Value& v) {
    if (v.is_leaf()) return "(" + v.to_string() + ")";
    return v.to_string();
}

} // namespace deltacat
