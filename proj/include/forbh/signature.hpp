#pragma once

#include <memory>
#include <string>
#include <vector>

#include <forbh/error.hpp>

namespace forbh {

/// A finite relational signature: named symbols with arities, split into a
/// base part and a set of unary expansion symbols, plus an optional linear
/// order flag. Symbols are kept sorted by name so two signatures compare by
/// value.
class Signature {
public:
    struct Symbol {
        std::string name;
        int arity = 0;
        bool expansion = false;

        bool operator==(const Symbol&) const = default;
    };

    Signature() = default;
    Signature(std::vector<Symbol> symbols, bool has_order);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    bool has_order() const { return has_order_; }

    int index_of(const std::string& name) const; // -1 if absent
    int require(const std::string& name) const;  // throws UnknownSymbol
    int arity(int sym) const { return symbols_[sym].arity; }
    bool is_expansion(int sym) const { return symbols_[sym].expansion; }
    const std::string& name(int sym) const { return symbols_[sym].name; }
    int size() const { return static_cast<int>(symbols_.size()); }

    std::vector<int> base_symbols() const;
    std::vector<int> expansion_symbols() const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<Symbol> symbols_; // sorted by name, unique
    bool has_order_ = false;
};

using SignaturePtr = std::shared_ptr<const Signature>;

SignaturePtr make_signature(std::vector<Signature::Symbol> symbols, bool has_order);

/// Same symbols, different order flag.
SignaturePtr with_order(const SignaturePtr& sig, bool has_order);

/// Base-only copy (expansion symbols dropped), order flag kept as given.
SignaturePtr base_signature(const SignaturePtr& sig, bool has_order);

} // namespace forbh
