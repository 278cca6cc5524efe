#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <unistd.h>

#include "limsup/bc_bounds.hpp"
#include "limsup/block_family.hpp"
#include "limsup/incl_excl.hpp"
#include "limsup/nested_family.hpp"
#include "limsup/parity_family.hpp"
#include "limsup/t12_family.hpp"

namespace limsup::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

struct Output {
    std::string path;
    std::ostream* out = nullptr;
};

/// Writes via a temporary file in the target directory and renames it into
/// place, so readers never see a half-written file.
void write_atomically(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const Output& o, const Json& j)
{
    const std::string text = j.dump(2) + "\n";
    if (o.path.empty()) *o.out << text;
    else write_atomically(o.path, text);
}

/// On failure the report also goes to stdout so the witness is visible even
/// when --out captured it.
int finish(const Output& o, const Json& j, bool pass)
{
    emit(o, j);
    if (!pass && !o.path.empty()) *o.out << j.dump(2) << "\n";
    return pass ? kPass : kVerificationFailed;
}

Rational parse_c(const std::string& text)
{
    return Rational::parse(text);
}

Json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::optional<TableFormat> table_format(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    return s == "json" ? TableFormat::json : TableFormat::csv;
}

std::string table_text(const MeasureTable& t, TableFormat f)
{
    if (f == TableFormat::json) return to_json(t).dump(2) + "\n";
    std::ostringstream s;
    write_table_csv(s, t);
    return s.str();
}

Json header(const std::string& command, std::uint64_t seed)
{
    return {{"command", command}, {"seed", seed}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact constructions and checks for limsup set sequences", "limsup"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = kDefaultSeed;
    std::string out_path;
    app.add_option("--seed", seed, "Seed recorded with every report")->capture_default_str();
    app.add_option("--out", out_path, "Write the JSON result here instead of stdout");

    // build-parity
    auto* parity = app.add_subcommand("build-parity", "Parity collections C_i, D_i");
    unsigned p_m = 0;
    bool p_verify = false;
    parity->add_option("--m", p_m, "m >= 1")->required();
    parity->add_flag("--verify", p_verify, "Check the intersection equalities");

    // build-blocks
    auto* blocks = app.add_subcommand("build-blocks", "Block sequences A_n, B_n");
    unsigned b_m = 0, b_K = 0;
    std::string b_c = "1", b_engine = "dyadic", b_table_a, b_table_b;
    std::size_t b_table_len = 0;
    bool b_verify = false;
    blocks->add_option("--m", b_m, "m >= 1")->required();
    blocks->add_option("--blocks", b_K, "Number of blocks K")->required();
    blocks->add_option("--c", b_c, "Scale c in [0,1] as p/q")->capture_default_str();
    blocks->add_option("--engine", b_engine, "dyadic|intervals")->check(CLI::IsMember({"dyadic", "intervals"}));
    blocks->add_flag("--verify", b_verify, "Check equalities, unions and structure");
    blocks->add_option("--table-a", b_table_a, "Write the A measure table (CSV)");
    blocks->add_option("--table-b", b_table_b, "Write the B measure table (CSV)");
    blocks->add_option("--table-len", b_table_len, "Longest tuple in the tables (default m+1)");

    // gpq
    auto* gpq = app.add_subcommand("gpq", "Nested G/H levels");
    std::uint64_t g_p = 1, g_q = 1;
    unsigned g_depth = 1;
    std::string g_backend = "explicit", g_first = "balanced";
    bool g_verify = false;
    gpq->add_option("--p", g_p)->required();
    gpq->add_option("--q", g_q)->required();
    gpq->add_option("--depth", g_depth)->required();
    gpq->add_option("--backend", g_backend, "explicit|formula")->check(CLI::IsMember({"explicit", "formula"}));
    gpq->add_option("--first-level", g_first, "balanced|literal")->check(CLI::IsMember({"balanced", "literal"}));
    gpq->add_flag("--verify", g_verify);

    // build-t12 / verify-t12 share their options
    struct T12Args {
        unsigned m = 0;
        std::string strategy = "paper", rule = "row", backend, c = "1", table_a, table_b;
        unsigned depth = 6;
    };
    T12Args bt, vt;
    auto t12_options = [](CLI::App* sub, T12Args& a) {
        sub->add_option("--m", a.m)->required();
        sub->add_option("--strategy", a.strategy, "paper|compact")->check(CLI::IsMember({"paper", "compact"}));
        sub->add_option("--rule", a.rule, "row|column multiplier assignment")->check(CLI::IsMember({"row", "column"}));
        sub->add_option("--depth", a.depth, "Levels n = 1..depth")->capture_default_str();
        sub->add_option("--backend", a.backend, "explicit|formula (default: explicit for compact)")
            ->check(CLI::IsMember({"explicit", "formula"}));
        sub->add_option("--c", a.c, "Final scale c in (0,1]")->capture_default_str();
    };
    auto* build_t12 = app.add_subcommand("build-t12", "Alternating sequences A_n, B_n with the float");
    t12_options(build_t12, bt);
    build_t12->add_option("--table-a", bt.table_a, "Write the A measure table (CSV, explicit only)");
    build_t12->add_option("--table-b", bt.table_b, "Write the B measure table (CSV, explicit only)");
    auto* verify_t12 = app.add_subcommand("verify-t12", "Check constants and alternating inequalities");
    t12_options(verify_t12, vt);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Kochen-Stone and Frolov bounds from a measure table");
    std::string bd_input, bd_format, bd_csv;
    std::size_t bd_upto = 0;
    bool bd_ks = false, bd_frolov = false;
    bounds->add_option("--input", bd_input)->required();
    bounds->add_option("--format", bd_format, "csv|json (default: by extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    bounds->add_option("--upto", bd_upto, "Largest prefix n (default: table n)");
    bounds->add_flag("--kochen-stone", bd_ks);
    bounds->add_flag("--frolov", bd_frolov);
    bounds->add_option("--csv", bd_csv, "Plot-ready CSV (n,ks_ratio,frolov_bound)");

    // incl-excl
    auto* ie = app.add_subcommand("incl-excl", "Union measures from intersection tables");
    std::string ie_a, ie_b, ie_mode = "thm13";
    std::size_t ie_kmax = 1, ie_nmax = 1;
    ie->add_option("--a", ie_a)->required();
    ie->add_option("--b", ie_b);
    ie->add_option("--mode", ie_mode, "thm13|thm14|union")->check(CLI::IsMember({"thm13", "thm14", "union"}));
    ie->add_option("--kmax", ie_kmax, "Largest k (union mode: k)");
    ie->add_option("--nmax", ie_nmax, "Largest n (union mode: n)");

    // export
    auto* exp = app.add_subcommand("export", "Measure table from a family JSON file");
    std::string ex_input, ex_sets = "A", ex_format = "csv";
    std::size_t ex_len = 3, ex_span = 0;
    exp->add_option("--input", ex_input, "Family JSON written by a build command")->required();
    exp->add_option("--sets", ex_sets, "Key of the set list (A, B, C, D, K)")->capture_default_str();
    exp->add_option("--max-len", ex_len, "Longest tuple")->capture_default_str();
    exp->add_option("--max-span", ex_span, "Largest i_k - i_1 + 1 (0 = any)");
    exp->add_option("--format", ex_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    const Output o{out_path, &out};
    const ResourceCaps caps = ResourceCaps::from_environment();
    try {
        if (parity->parsed()) {
            const auto fam = build_parity_family(p_m);
            Json j = header("build-parity", seed);
            j.update(to_json(fam));
            bool pass = true;
            if (p_verify) {
                const auto rep = verify_parity_properties(fam);
                j["verification"] = to_json(rep);
                pass = rep.pass;
            }
            return finish(o, j, pass);
        }

        if (blocks->parsed()) {
            const auto fam = build_block_family(b_m, b_K, parse_c(b_c), caps);
            Json j = header("build-blocks", seed);
            j.update(to_json(fam));
            bool pass = true;
            if (b_verify) {
                const Engine engine = b_engine == "dyadic" ? Engine::dyadic : Engine::intervals;
                const auto eq = verify_block_equalities(fam, b_m, engine);
                const auto cx = verify_block_equalities(fam, b_m + 1, engine);
                const auto st = verify_block_structure(fam);
                const auto unions = tail_union_measures(fam);
                bool unions_ok = true;
                for (const auto& u : unions)
                    unions_ok = unions_ok && u.union_A == u.expected_A && u.union_B == u.expected_B;
                pass = eq.pass && st.nested && st.recurrence && unions_ok;
                Json v;
                v["pass"] = pass;
                v["equalities"] = to_json(eq);
                v["counterexample_search"] = to_json(cx);
                v["unions"] = to_json(unions);
                v["nested"] = st.nested;
                v["recurrence"] = st.recurrence;
                j["verification"] = std::move(v);
            }
            const std::size_t len = b_table_len ? b_table_len : b_m + 1;
            if (!b_table_a.empty()) write_atomically(b_table_a, table_text(tabulate_intersections(fam.A, len), TableFormat::csv));
            if (!b_table_b.empty()) write_atomically(b_table_b, table_text(tabulate_intersections(fam.B, len), TableFormat::csv));
            return finish(o, j, pass);
        }

        if (gpq->parsed()) {
            const NestedParams params{g_p, g_q, g_depth,
                                      g_first == "balanced" ? FirstLevel::balanced : FirstLevel::literal};
            Json j = header("gpq", seed);
            j["backend"] = g_backend;
            bool pass = true;
            if (g_backend == "explicit") {
                const auto levels = build_nested_explicit(params, caps);
                j.update(nested_levels_to_json(params, levels));
                if (g_verify) {
                    const auto rep = verify_nested_levels(g_p, g_q, levels);
                    j["verification"] = to_json(rep);
                    pass = rep.pass;
                }
            } else {
                const FormulaNested f(g_p, g_q);
                j["p"] = g_p;
                j["q"] = g_q;
                j["depth"] = g_depth;
                Json levels = Json::array();
                for (unsigned n = 1; n <= g_depth; ++n)
                    levels.push_back({{"n", n}, {"H_measure", f.measure_H(n)}, {"G_measure", f.measure_G(n)}});
                j["levels"] = std::move(levels);
            }
            return finish(o, j, pass);
        }

        if (build_t12->parsed() || verify_t12->parsed()) {
            const bool verifying = verify_t12->parsed();
            const T12Args& a = verifying ? vt : bt;
            const Strategy strategy = a.strategy == "paper" ? Strategy::paper : Strategy::compact;
            const auto constants =
                make_constants(a.m, strategy, a.rule == "row" ? MultiplierRule::row : MultiplierRule::column);
            const std::string backend = a.backend.empty() ? (strategy == Strategy::compact ? "explicit" : "formula")
                                                          : a.backend;
            const auto fam = build_t12_family(constants, a.depth,
                                              backend == "explicit" ? T12Backend::explicit_sets : T12Backend::formula,
                                              parse_c(a.c), caps);
            Json j = header(verifying ? "verify-t12" : "build-t12", seed);
            if (verifying) {
                const auto rep = verify_t12_claims(fam, a.depth);
                j["constants"] = to_json(constants);
                j["report"] = to_json(rep);
                return finish(o, j, rep.pass);
            }
            j.update(to_json(fam));
            const auto system = verify_inequality_system(constants);
            j["system"] = to_json(system);
            if (backend == "explicit") {
                const std::size_t len = std::max<std::size_t>(constants.m + 1, 2);
                if (!a.table_a.empty()) write_atomically(a.table_a, table_text(tabulate_intersections(fam.A, len), TableFormat::csv));
                if (!a.table_b.empty()) write_atomically(a.table_b, table_text(tabulate_intersections(fam.B, len), TableFormat::csv));
            }
            return finish(o, j, system.pass);
        }

        if (bounds->parsed()) {
            const auto table = load_table(bd_input, table_format(bd_format));
            if (!bd_ks && !bd_frolov) bd_ks = bd_frolov = true;
            const auto rep = bounds_report(table, bd_upto ? bd_upto : table.n(), bd_ks, bd_frolov);
            Json j = header("bounds", seed);
            j.update(to_json(rep));
            if (!bd_csv.empty()) {
                std::ostringstream s;
                write_bounds_csv(s, rep);
                write_atomically(bd_csv, s.str());
            }
            return finish(o, j, true);
        }

        if (ie->parsed()) {
            const auto ta = load_table(ie_a);
            Json j = header("incl-excl", seed);
            if (ie_mode == "union") {
                j["k"] = ie_kmax;
                j["n"] = ie_nmax;
                j["union"] = union_by_inclusion_exclusion(ta, ie_kmax, ie_nmax, caps);
                return finish(o, j, true);
            }
            if (ie_b.empty()) throw std::invalid_argument("--b is required for " + ie_mode);
            const auto tb = load_table(ie_b);
            const auto rep = ie_mode == "thm13" ? verify_thm13(ta, tb, ie_kmax, ie_nmax, caps)
                                                : verify_thm14(ta, tb, ie_kmax, ie_nmax, caps);
            j.update(to_json(rep));
            return finish(o, j, rep.pass);
        }

        if (exp->parsed()) {
            const Json fam = load_json(ex_input);
            if (!fam.contains(ex_sets)) throw std::invalid_argument(ex_input + " has no set list '" + ex_sets + "'");
            const auto sets = sets_from_json(fam.at(ex_sets));
            const auto table = tabulate_intersections(sets, ex_len, ex_span);
            const std::string text = table_text(table, ex_format == "json" ? TableFormat::json : TableFormat::csv);
            if (out_path.empty()) out << text;
            else write_atomically(out_path, text);
            return kPass;
        }
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

} // namespace limsup::cli
