#pragma once

#include <memory>
#include <string>
#include <utility>

namespace deltacat {

/// An object of the category: the terminal object, a model base object, or a
/// binary product. Products are never flattened, so (A×B)×C and A×(B×C) differ.
class ObjType {
public:
    enum class Kind { unit, base, prod };

    ObjType() : ObjType(unit()) {}

    static ObjType unit() {
        static const auto node = std::make_shared<const Node>(Node{Kind::unit, {}, nullptr, nullptr});
        return ObjType(node);
    }

    static ObjType base(std::string name) {
        return ObjType(std::make_shared<const Node>(Node{Kind::base, std::move(name), nullptr, nullptr}));
    }

    static ObjType prod(const ObjType& left, const ObjType& right) {
        return ObjType(std::make_shared<const Node>(Node{Kind::prod, {}, left.node_, right.node_}));
    }

    Kind kind() const noexcept { return node_->kind; }
    bool is_unit() const noexcept { return node_->kind == Kind::unit; }
    bool is_base() const noexcept { return node_->kind == Kind::base; }
    bool is_prod() const noexcept { return node_->kind == Kind::prod; }

    /// Base-object name; empty for unit and products.
    const std::string& name() const noexcept { return node_->name; }
    ObjType left() const { return ObjType(node_->left); }
    ObjType right() const { return ObjType(node_->right); }

    friend bool operator==(const ObjType& a, const ObjType& b) { return same(a.node_.get(), b.node_.get()); }

    /// Canonical term-format spelling: `unit`, `Z`, `(prod Z Z)`.
    std::string to_string() const { return render(node_.get()); }

private:
    struct Node {
        Kind kind;
        std::string name;
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
    };

    explicit ObjType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static bool same(const Node* a, const Node* b) {
        if (a == b) return true;
        if (a->kind != b->kind) return false;
        switch (a->kind) {
        case Kind::unit: return true;
        case Kind::base: return a->name == b->name;
        case Kind::prod: return same(a->left.get(), b->left.get()) && same(a->right.get(), b->right.get());
        }
        return false;
    }

    static std::string render(const Node* n) {
        switch (n->kind) {
        case Kind::unit: return "unit";
        case Kind::base: return n->name;
        case Kind::prod: return "(prod " + render(n->left.get()) + " " + render(n->right.get()) + ")";
        }
        return {};
    }

    std::shared_ptr<const Node> node_;
};

/// T(A) = A×A.
inline ObjType square(const ObjType& a) { return ObjType::prod(a, a); }

} // namespace deltacat
