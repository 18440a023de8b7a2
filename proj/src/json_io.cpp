#include <forbh/json_io.hpp>

#include <fstream>
#include <set>

namespace forbh {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const char* what)
{
    if (!j.is_object())
        fail(errc::schema_error, std::string(what) + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            fail(errc::schema_error, "unknown key '" + it.key() + "' in " + what,
                 {{"key", it.key()}});
}

void check_version(const json& j)
{
    if (!j.contains("v"))
        fail(errc::schema_error, "missing version field \"v\"");
    if (!j["v"].is_number_integer() || j["v"].get<int>() != 1)
        fail(errc::schema_error, "unsupported file version", {{"v", j["v"]}});
}

SignaturePtr parse_signature(const json& j)
{
    std::vector<Signature::Symbol> symbols;
    if (j.contains("signature")) {
        const json& sig = j["signature"];
        if (!sig.is_object())
            fail(errc::schema_error, "\"signature\" must map symbol names to arities");
        for (auto it = sig.begin(); it != sig.end(); ++it) {
            if (!it.value().is_number_integer() || it.value().get<int>() < 1)
                fail(errc::schema_error, "arity of '" + it.key() + "' must be a positive integer");
            symbols.push_back({it.key(), it.value().get<int>(), false});
        }
    }
    if (j.contains("tau")) {
        const json& tau = j["tau"];
        if (!tau.is_array())
            fail(errc::schema_error, "\"tau\" must be an array of symbol names");
        for (const auto& t : tau) {
            std::string name = t.get<std::string>();
            bool found = false;
            for (auto& s : symbols) {
                if (s.name == name) {
                    if (s.arity != 1)
                        fail(errc::schema_error, "tau symbol '" + name + "' must be unary");
                    s.expansion = true;
                    found = true;
                }
            }
            if (!found)
                symbols.push_back({name, 1, true});
        }
    }
    return make_signature(std::move(symbols), j.contains("order"));
}

} // namespace

ParsedStructure parse_structure(const json& j, bool require_version, SignaturePtr forced_sig)
{
    check_keys(j, {"v", "signature", "tau", "domain", "relations", "order", "parts"},
               "structure");
    if (require_version)
        check_version(j);

    SignaturePtr sig;
    if (forced_sig) {
        sig = with_order(forced_sig, j.contains("order"));
        if (j.contains("signature") || j.contains("tau")) {
            SignaturePtr given = parse_signature(j);
            if (!(*given == *sig))
                fail(errc::signature_mismatch, "structure signature does not match the context");
        }
    } else {
        if (!j.contains("signature"))
            fail(errc::schema_error, "missing \"signature\"");
        sig = parse_signature(j);
    }

    if (!j.contains("domain") || !j["domain"].is_array())
        fail(errc::schema_error, "missing \"domain\" array");
    std::vector<std::string> domain;
    for (const auto& d : j["domain"])
        domain.push_back(d.get<std::string>());

    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rels;
    if (j.contains("relations")) {
        const json& r = j["relations"];
        if (!r.is_object())
            fail(errc::schema_error, "\"relations\" must be an object");
        for (auto it = r.begin(); it != r.end(); ++it) {
            std::vector<std::vector<std::string>> tuples;
            if (!it.value().is_array())
                fail(errc::schema_error, "relation '" + it.key() + "' must be an array of tuples");
            for (const auto& t : it.value()) {
                std::vector<std::string> tuple;
                if (!t.is_array())
                    fail(errc::schema_error, "tuples must be arrays of element names");
                for (const auto& e : t)
                    tuple.push_back(e.get<std::string>());
                tuples.push_back(std::move(tuple));
            }
            rels.emplace_back(it.key(), std::move(tuples));
        }
    }

    std::optional<std::vector<std::string>> order;
    if (j.contains("order")) {
        order.emplace();
        for (const auto& e : j["order"])
            order->push_back(e.get<std::string>());
    }

    ParsedStructure out{make_structure_named(sig, std::move(domain), rels, order), std::nullopt};
    if (j.contains("parts")) {
        out.parts.emplace();
        for (auto it = j["parts"].begin(); it != j["parts"].end(); ++it)
            out.parts->emplace_back(it.key(), it.value().get<std::string>());
    }
    return out;
}

json emit_structure(const Structure& s)
{
    json j;
    j["v"] = 1;
    json sig = json::object();
    json tau = json::array();
    for (const auto& sym : s.sig->symbols()) {
        sig[sym.name] = sym.arity;
        if (sym.expansion)
            tau.push_back(sym.name);
    }
    j["signature"] = sig;
    if (!tau.empty())
        j["tau"] = tau;
    j["domain"] = s.domain;

    json rels = json::object();
    for (int sym = 0; sym < s.sig->size(); ++sym) {
        if (s.relations[sym].empty())
            continue;
        json tuples = json::array();
        for (const Tuple& t : s.relations[sym]) {
            json named = json::array();
            for (int x : t)
                named.push_back(s.domain[x]);
            tuples.push_back(named);
        }
        rels[s.sig->name(sym)] = tuples;
    }
    j["relations"] = rels;

    if (s.order) {
        json ord = json::array();
        for (int x : *s.order)
            ord.push_back(s.domain[x]);
        j["order"] = ord;
    }
    return j;
}

json emit_structure_with_parts(const Structure& s, const std::vector<int>& part,
                               const Structure& index)
{
    json j = emit_structure(s);
    json parts = json::object();
    for (int i = 0; i < s.size(); ++i)
        parts[s.domain[i]] = index.domain[part[i]];
    j["parts"] = parts;
    return j;
}

ParsedForbiddenSet parse_forbidden_set(const json& j)
{
    check_keys(j, {"v", "sigma", "forbidden"}, "forbidden-set file");
    check_version(j);
    if (!j.contains("sigma"))
        fail(errc::schema_error, "missing \"sigma\"");

    json sig_holder;
    sig_holder["signature"] = j["sigma"];
    SignaturePtr sigma = parse_signature(sig_holder);

    ParsedForbiddenSet out;
    out.sigma = sigma;
    if (j.contains("forbidden")) {
        if (!j["forbidden"].is_array())
            fail(errc::schema_error, "\"forbidden\" must be an array of structures");
        for (const auto& f : j["forbidden"]) {
            check_keys(f, {"v", "signature", "domain", "relations"}, "forbidden structure");
            ParsedStructure ps = parse_structure(f, false, sigma);
            out.forbidden.push_back(std::move(ps.structure));
        }
    }
    return out;
}

json emit_morphism(const Structure& source, const Structure& target, const Morphism& m)
{
    json map = json::object();
    for (int i = 0; i < source.size(); ++i)
        map[source.domain[i]] = target.domain[m.map[i]];
    const char* kind = m.kind == morphism_kind::homomorphism ? "homomorphism"
                       : m.kind == morphism_kind::embedding  ? "embedding"
                                                             : "isomorphism";
    return json{{"map", map}, {"kind", kind}};
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(errc::schema_error, "cannot open file '" + path + "'", {{"path", path}});
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail(errc::schema_error, "invalid JSON in '" + path + "': " + e.what(), {{"path", path}});
    }
    return j;
}

} // namespace forbh
