#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace forbh {

// Domain error codes, spelled the way they appear in CLI error objects.
enum class errc {
    arity_mismatch,
    unknown_element,
    unknown_symbol,
    invalid_order,
    invalid_domain,
    signature_mismatch,
    invalid_partition,
    empty_input,
    not_a_tree,
    not_a_cut,
    not_f_free,
    tuple_not_present,
    premise_unresolved,
    not_embedding,
    membership_failure,
    not_in_class,
    not_rectified,
    not_rectified_input,
    not_partite,
    no_embedding,
    partner_search_exhausted,
    search_budget_exhausted,
    missing_parts,
    unknown_suite,
    schema_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, std::string message, nlohmann::json detail = nullptr)
        : std::runtime_error(std::move(message)), code_(code), detail_(std::move(detail)) {}

    errc code() const { return code_; }
    const nlohmann::json& detail() const { return detail_; }

    nlohmann::json to_json() const
    {
        nlohmann::json j{{"code", errc_name(code_)}, {"message", what()}};
        if (!detail_.is_null())
            j["detail"] = detail_;
        return j;
    }

private:
    errc code_;
    nlohmann::json detail_;
};

[[noreturn]] inline void fail(errc code, std::string message, nlohmann::json detail = nullptr)
{
    throw error(code, std::move(message), std::move(detail));
}

} // namespace forbh
