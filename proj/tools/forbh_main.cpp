// forbh: a toolbox for classes of relational structures with forbidden tree
// homomorphisms — canonical unary expansions, free amalgamation, the partite
// lemma and partite construction, plus brute-force verification oracles.

#include <CLI11.hpp>
#include <json.hpp>

#include <forbh/dot.hpp>
#include <forbh/json_io.hpp>
#include <forbh/verify.hpp>

#include <iostream>

using nlohmann::json;
using namespace forbh;

namespace {

bool g_quiet = false;

void log_line(const std::string& msg)
{
    if (!g_quiet)
        std::cerr << msg << "\n";
}

void print_result(const json& j)
{
    std::cout << j.dump(2) << "\n";
}

ContextPtr load_context(const std::vector<std::string>& forbid_files)
{
    SignaturePtr sigma;
    std::vector<Structure> forbidden;
    for (const std::string& path : forbid_files) {
        json j = load_json_file(path);
        if (j.contains("forbidden")) {
            ParsedForbiddenSet set = parse_forbidden_set(j);
            if (sigma && !(*sigma == *set.sigma))
                fail(errc::signature_mismatch, "forbidden-set files disagree on σ");
            sigma = set.sigma;
            for (Structure& f : set.forbidden)
                forbidden.push_back(std::move(f));
        } else {
            ParsedStructure ps = parse_structure(j);
            if (!ps.structure.sig->expansion_symbols().empty() || ps.structure.order)
                fail(errc::schema_error, "forbidden structures must be bare σ-structures");
            if (sigma && !(*sigma == *ps.structure.sig))
                fail(errc::signature_mismatch, "forbidden-set files disagree on σ");
            sigma = ps.structure.sig;
            forbidden.push_back(std::move(ps.structure));
        }
    }
    if (!sigma)
        fail(errc::schema_error, "no forbidden set given");
    return make_context(sigma, std::move(forbidden));
}

Structure load_structure(const std::string& path, SignaturePtr forced = nullptr)
{
    return parse_structure(load_json_file(path), true, forced).structure;
}

std::vector<int> parse_map_arg(const std::string& arg, const Structure& from, const Structure& to)
{
    json j = json::parse(arg, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        fail(errc::schema_error, "mapping arguments must be JSON objects", {{"arg", arg}});
    std::vector<int> map(from.size(), -1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int src = from.element_index(it.key());
        int dst = to.element_index(it.value().get<std::string>());
        if (src < 0 || dst < 0)
            fail(errc::unknown_element, "mapping names an unknown element", {{"arg", arg}});
        map[src] = dst;
    }
    for (int v : map)
        if (v < 0)
            fail(errc::unknown_element, "mapping must cover the whole source domain");
    return map;
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"structures with forbidden tree homomorphisms: expansions, amalgamation, "
                 "partite construction, and exhaustive verification"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--quiet", g_quiet, "suppress stderr logs");

    // pieces
    auto* cmd_pieces = app.add_subcommand("pieces", "pieces and piece classes of a forbidden set");
    std::string forest_file;
    cmd_pieces->add_option("--forest", forest_file, "forbidden-set file")->required();

    // expand
    auto* cmd_expand = app.add_subcommand("expand", "canonical expansion of an F-free σ-structure");
    std::vector<std::string> forbid_files;
    std::string input_file;
    cmd_expand->add_option("--forbid", forbid_files, "forbidden set (file, repeatable)")->required();
    cmd_expand->add_option("--input", input_file, "σ-structure file")->required();

    // member
    auto* cmd_member = app.add_subcommand("member", "membership of a σ∪τ-structure in the expanded class");
    std::vector<std::string> m_forbid;
    std::string m_input;
    int m_bound = 0;
    cmd_member->add_option("--forbid", m_forbid, "forbidden set (file, repeatable)")->required();
    cmd_member->add_option("--input", m_input, "σ∪τ-structure file")->required();
    cmd_member->add_option("--bound", m_bound, "witness search bound (default 2·max|F|)");

    // canonize
    auto* cmd_canonize = app.add_subcommand("canonize", "canonical superstructure by gluing witnesses");
    std::vector<std::string> k_forbid;
    std::string k_input;
    int k_bound = 0;
    cmd_canonize->add_option("--forbid", k_forbid, "forbidden set (file, repeatable)")->required();
    cmd_canonize->add_option("--input", k_input, "σ∪τ-structure file")->required();
    cmd_canonize->add_option("--bound", k_bound, "witness search bound");

    // amalgamate
    auto* cmd_amalg = app.add_subcommand("amalgamate", "free amalgam of two members over a base");
    std::vector<std::string> am_forbid;
    std::string am_base, am_left, am_right, am_embed_left, am_embed_right;
    int am_bound = 0;
    cmd_amalg->add_option("--forbid", am_forbid, "forbidden set (file, repeatable)")->required();
    cmd_amalg->add_option("--base", am_base, "base structure file")->required();
    cmd_amalg->add_option("--left", am_left, "left structure file")->required();
    cmd_amalg->add_option("--right", am_right, "right structure file")->required();
    cmd_amalg->add_option("--embed-left", am_embed_left, "JSON map base→left")->required();
    cmd_amalg->add_option("--embed-right", am_embed_right, "JSON map base→right")->required();
    cmd_amalg->add_option("--bound", am_bound, "witness search bound");

    // partite-lemma
    auto* cmd_lemma = app.add_subcommand("partite-lemma", "the Ramsey witness for rectified structures");
    std::vector<std::string> pl_forbid;
    std::string pl_a, pl_b, pl_parts;
    long long pl_r = 2;
    cmd_lemma->add_option("--forbid", pl_forbid, "forbidden set (file, repeatable)")->required();
    cmd_lemma->add_option("--a", pl_a, "ordered pattern structure file")->required();
    cmd_lemma->add_option("--b", pl_b, "rectified structure file (with \"parts\")");
    cmd_lemma->add_option("--parts", pl_parts, "JSON part-size map to build B from A");
    cmd_lemma->add_option("-r", pl_r, "colour count")->required();

    // construct
    auto* cmd_construct = app.add_subcommand("construct", "the full partite construction");
    std::vector<std::string> co_forbid;
    std::string co_a, co_b, co_p;
    long long co_r = 2;
    long long co_max_size = 200000;
    int co_bound = 0;
    cmd_construct->add_option("--forbid", co_forbid, "forbidden set (file, repeatable)")->required();
    cmd_construct->add_option("--a", co_a, "ordered pattern structure file")->required();
    cmd_construct->add_option("--b", co_b, "ordered target structure file")->required();
    cmd_construct->add_option("-r", co_r, "colour count")->required();
    cmd_construct->add_option("--p", co_p, "indexing σ-structure file (found by search when omitted)");
    cmd_construct->add_option("--max-size", co_max_size, "abort when an intermediate stage exceeds this");
    cmd_construct->add_option("--bound", co_bound, "witness search bound");

    // verify-arrow
    auto* cmd_arrow = app.add_subcommand("verify-arrow", "exhaustive partition-arrow check");
    std::string va_c, va_b, va_a;
    long long va_r = 1;
    unsigned long long va_budget = 1ull << 24;
    cmd_arrow->add_option("--c", va_c, "host structure file")->required();
    cmd_arrow->add_option("--b", va_b, "target structure file")->required();
    cmd_arrow->add_option("--a", va_a, "pattern structure file")->required();
    cmd_arrow->add_option("-r", va_r, "colour count")->required();
    cmd_arrow->add_option("--budget", va_budget, "max colourings (default 2^24)");

    // suite
    auto* cmd_suite = app.add_subcommand("suite", "run a named invariant family");
    std::string su_name;
    int su_scale = 0;
    bool su_inject = false;
    cmd_suite->add_option("--name", su_name, "suite name")->required();
    cmd_suite->add_option("--scale", su_scale, "exhaustive scale (suite-specific default)");
    cmd_suite->add_flag("--inject", su_inject, "apply the suite's negative control");

    // viz
    auto* cmd_viz = app.add_subcommand("viz", "DOT export");
    std::string vz_input, vz_graph;
    cmd_viz->add_option("--input", vz_input, "structure file")->required();
    cmd_viz->add_option("--graph", vz_graph, "incidence | gaifman | partite")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_pieces) {
            ContextPtr ctx = load_context({forest_file});
            json out;
            json classes = json::array();
            for (const PieceClass& cls : ctx->classes) {
                json reps = json::array();
                for (const RootedStructure& r : cls.distinct_representatives) {
                    json rep = emit_structure(r.structure);
                    rep["root"] = r.structure.domain[r.root];
                    reps.push_back(rep);
                }
                json inc = json::array();
                for (const RootedStructure& r : cls.incompatibility_set) {
                    json item = emit_structure(r.structure);
                    item["root"] = r.structure.domain[r.root];
                    inc.push_back(item);
                }
                classes.push_back({{"symbol", cls.id},
                                   {"representatives", reps},
                                   {"incompatibility_set", inc},
                                   {"piece_count", cls.representatives.size()}});
            }
            json piece_list = json::array();
            for (const PieceClass& cls : ctx->classes)
                for (const Piece& p : cls.representatives) {
                    json item = emit_structure(p.rooted.structure);
                    item["root"] = p.rooted.structure.domain[p.rooted.root];
                    piece_list.push_back({{"tree", p.tree_index},
                                          {"cut", ctx->forbidden[p.tree_index].domain[p.cut]},
                                          {"class", cls.id},
                                          {"piece", item}});
                }
            out["tau"] = [&] {
                json arr = json::array();
                for (const PieceClass& cls : ctx->classes)
                    arr.push_back(cls.id);
                return arr;
            }();
            out["classes"] = classes;
            out["pieces"] = piece_list;
            log_line("pieces: " + std::to_string(piece_list.size()) + " pieces in " +
                     std::to_string(ctx->classes.size()) + " classes");
            print_result(out);
        } else if (*cmd_expand) {
            ContextPtr ctx = load_context(forbid_files);
            Structure a = load_structure(input_file, with_order(ctx->sigma, false));
            Structure e = canonical_expansion(a, *ctx);
            print_result(emit_structure(e));
        } else if (*cmd_member) {
            ContextPtr ctx = load_context(m_forbid);
            Structure a = load_structure(m_input);
            if (a.sig->has_order())
                a = drop_order(a);
            if (!(*a.sig == *ctx->expanded))
                fail(errc::signature_mismatch, "input is not over the expanded signature σ∪τ");
            MembershipVerdict v = is_in_C(a, *ctx, m_bound, true);
            json out{{"status", membership_name(v.status)}};
            if (!v.certificate.is_null())
                out["certificate"] = v.certificate;
            print_result(out);
        } else if (*cmd_canonize) {
            ContextPtr ctx = load_context(k_forbid);
            Structure a = load_structure(k_input);
            if (a.sig->has_order())
                a = drop_order(a);
            if (!(*a.sig == *ctx->expanded))
                fail(errc::signature_mismatch, "input is not over the expanded signature σ∪τ");
            print_result(emit_structure(canonize(a, *ctx, k_bound)));
        } else if (*cmd_amalg) {
            ContextPtr ctx = load_context(am_forbid);
            Structure base = load_structure(am_base);
            Structure left = load_structure(am_left);
            Structure right = load_structure(am_right);
            Morphism f1{parse_map_arg(am_embed_left, base, left), morphism_kind::embedding};
            Morphism f2{parse_map_arg(am_embed_right, base, right), morphism_kind::embedding};
            AmalgamResult res = free_amalgam(base, left, right, f1, f2, *ctx, am_bound);
            json out;
            out["c"] = emit_structure(res.c);
            out["g1"] = emit_morphism(left, res.c, res.g1);
            out["g2"] = emit_morphism(right, res.c, res.g2);
            print_result(out);
        } else if (*cmd_lemma) {
            ContextPtr ctx = load_context(pl_forbid);
            Structure a = load_structure(pl_a);
            int bound = 0;
            PartiteStructure b;
            if (!pl_parts.empty()) {
                json sizes_json = json::parse(pl_parts, nullptr, false);
                if (sizes_json.is_discarded() || !sizes_json.is_object())
                    fail(errc::schema_error, "--parts must be a JSON object of sizes");
                std::map<std::string, int> sizes;
                for (auto it = sizes_json.begin(); it != sizes_json.end(); ++it)
                    sizes[it.key()] = it.value().get<int>();
                b = rectified_structure(a, sizes, *ctx, bound);
            } else if (!pl_b.empty()) {
                ParsedStructure ps = parse_structure(load_json_file(pl_b));
                if (!ps.parts)
                    fail(errc::missing_parts, "--b file needs a \"parts\" map");
                std::vector<int> part(ps.structure.size(), -1);
                for (auto& [from, to] : *ps.parts) {
                    int src = ps.structure.element_index(from);
                    int dst = a.element_index(to);
                    if (src < 0 || dst < 0)
                        fail(errc::unknown_element, "parts map names unknown elements");
                    part[src] = dst;
                }
                b = PartiteStructure{ps.structure, a, part, partite_mode::a_rectified};
                check_rectified(b);
            } else {
                fail(errc::schema_error, "give either --parts or --b");
            }
            PartiteLemmaResult res = partite_lemma(a, b, pl_r, *ctx, bound);
            json out;
            out["e"] = emit_structure_with_parts(res.e.carrier, res.e.part, a);
            json levels = json::array();
            for (const auto& lvl : res.levels)
                levels.push_back({{"element", lvl.element},
                                  {"b_part_size", lvl.b_part_size},
                                  {"k", lvl.extension},
                                  {"colors", lvl.colors}});
            out["levels"] = levels;
            out["sizes"] = res.e_sizes;
            print_result(out);
        } else if (*cmd_construct) {
            ContextPtr ctx = load_context(co_forbid);
            Structure a = load_structure(co_a);
            Structure b = load_structure(co_b);
            std::optional<Structure> p;
            if (!co_p.empty())
                p = load_structure(co_p, with_order(ctx->sigma, true));
            ConstructionOptions opt;
            opt.r = co_r;
            opt.max_size = co_max_size;
            opt.bound = co_bound;
            ConstructionResult cr = partite_construction(a, b, p, *ctx, opt);
            log_line("construct: |C| = " + std::to_string(cr.c.carrier.size()) + " over " +
                     std::to_string(cr.steps.size()) + " steps");
            print_result(construction_trace_json(cr));
        } else if (*cmd_arrow) {
            auto load_side = [&](const std::string& path) {
                ParsedStructure ps = parse_structure(load_json_file(path));
                return ps.structure;
            };
            Structure c = load_side(va_c), b = load_side(va_b), a = load_side(va_a);
            ArrowInstance inst{{c, std::nullopt}, {b, std::nullopt}, {a, std::nullopt}, va_r};
            ArrowVerdict v = arrow_check(inst, va_budget);
            print_result(arrow_verdict_json(inst, v));
        } else if (*cmd_suite) {
            SuiteReport r = run_property_suite(su_name, su_scale, su_inject);
            log_line("suite " + r.suite + ": " + (r.pass ? "pass" : "fail") + " (" +
                     std::to_string(r.cases) + " cases, " + std::to_string(r.runtime_ms) + " ms)");
            print_result(suite_report_json(r, false));
        } else if (*cmd_viz) {
            ParsedStructure ps = parse_structure(load_json_file(vz_input));
            dot_kind kind;
            if (vz_graph == "incidence")
                kind = dot_kind::incidence;
            else if (vz_graph == "gaifman")
                kind = dot_kind::gaifman;
            else if (vz_graph == "partite")
                kind = dot_kind::partite;
            else
                fail(errc::schema_error, "unknown graph kind '" + vz_graph + "'");
            if (kind == dot_kind::partite) {
                if (!ps.parts)
                    fail(errc::missing_parts, "partite rendering needs a \"parts\" map in the file");
                std::vector<std::string> names;
                std::map<std::string, int> name_index;
                std::vector<int> part(ps.structure.size(), -1);
                for (auto& [from, to] : *ps.parts) {
                    int src = ps.structure.element_index(from);
                    if (src < 0)
                        fail(errc::unknown_element, "parts map names an unknown element");
                    auto it = name_index.find(to);
                    if (it == name_index.end()) {
                        it = name_index.emplace(to, static_cast<int>(names.size())).first;
                        names.push_back(to);
                    }
                    part[src] = it->second;
                }
                for (int v : part)
                    if (v < 0)
                        fail(errc::missing_parts, "parts map must cover the domain");
                std::cout << emit_dot(ps.structure, kind, &part, &names);
            } else {
                std::cout << emit_dot(ps.structure, kind);
            }
        }
        return 0;
    } catch (const error& e) {
        log_line(std::string("error: ") + e.what());
        print_result(json{{"error", e.to_json()}});
        return 1;
    }
}

} // namespace

int main(int argc, char** argv)
{
    return run_cli(argc, argv);
}
