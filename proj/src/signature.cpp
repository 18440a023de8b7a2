#include <forbh/signature.hpp>

#include <algorithm>

namespace forbh {

const char* errc_name(errc c)
{
    switch (c) {
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::unknown_element: return "UnknownElement";
    case errc::unknown_symbol: return "UnknownSymbol";
    case errc::invalid_order: return "InvalidOrder";
    case errc::invalid_domain: return "InvalidDomain";
    case errc::signature_mismatch: return "SignatureMismatch";
    case errc::invalid_partition: return "InvalidPartition";
    case errc::empty_input: return "EmptyInput";
    case errc::not_a_tree: return "NotATree";
    case errc::not_a_cut: return "NotACut";
    case errc::not_f_free: return "NotFFree";
    case errc::tuple_not_present: return "TupleNotPresent";
    case errc::premise_unresolved: return "PremiseUnresolved";
    case errc::not_embedding: return "NotEmbedding";
    case errc::membership_failure: return "MembershipFailure";
    case errc::not_in_class: return "NotInClass";
    case errc::not_rectified: return "NotRectified";
    case errc::not_rectified_input: return "NotRectifiedInput";
    case errc::not_partite: return "NotPartite";
    case errc::no_embedding: return "NoEmbedding";
    case errc::partner_search_exhausted: return "PartnerSearchExhausted";
    case errc::search_budget_exhausted: return "SearchBudgetExhausted";
    case errc::missing_parts: return "MissingParts";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::schema_error: return "SchemaError";
    }
    return "Error";
}

Signature::Signature(std::vector<Symbol> symbols, bool has_order)
    : symbols_(std::move(symbols)), has_order_(has_order)
{
    std::sort(symbols_.begin(), symbols_.end(),
              [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
    for (size_t i = 0; i < symbols_.size(); ++i) {
        const Symbol& s = symbols_[i];
        if (s.arity < 1)
            fail(errc::schema_error, "symbol '" + s.name + "' has non-positive arity");
        if (s.expansion && s.arity != 1)
            fail(errc::schema_error, "expansion symbol '" + s.name + "' must be unary");
        if (i > 0 && symbols_[i - 1].name == s.name)
            fail(errc::schema_error, "duplicate symbol '" + s.name + "'");
    }
}

int Signature::index_of(const std::string& name) const
{
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                               [](const Symbol& s, const std::string& n) { return s.name < n; });
    if (it == symbols_.end() || it->name != name)
        return -1;
    return static_cast<int>(it - symbols_.begin());
}

int Signature::require(const std::string& name) const
{
    int i = index_of(name);
    if (i < 0)
        fail(errc::unknown_symbol, "unknown symbol '" + name + "'", {{"symbol", name}});
    return i;
}

std::vector<int> Signature::base_symbols() const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (!symbols_[i].expansion)
            out.push_back(i);
    return out;
}

std::vector<int> Signature::expansion_symbols() const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (symbols_[i].expansion)
            out.push_back(i);
    return out;
}

SignaturePtr make_signature(std::vector<Signature::Symbol> symbols, bool has_order)
{
    return std::make_shared<const Signature>(std::move(symbols), has_order);
}

SignaturePtr with_order(const SignaturePtr& sig, bool has_order)
{
    if (sig->has_order() == has_order)
        return sig;
    return make_signature(sig->symbols(), has_order);
}

SignaturePtr base_signature(const SignaturePtr& sig, bool has_order)
{
    std::vector<Signature::Symbol> syms;
    for (const auto& s : sig->symbols())
        if (!s.expansion)
            syms.push_back(s);
    return make_signature(std::move(syms), has_order);
}

} // namespace forbh
