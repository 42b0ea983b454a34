// Command-line front end: pattern avoidance, quasisymmetric generating
// functions, intersecting-family extraction and search, and the named
// verification checks.
//
// Exit codes: 0 success / verdict holds, 1 verdict fails, 2 usage or
// precondition error, 3 budget exceeded without --partial.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "patqsym/config.hpp"
#include "patqsym/errors.hpp"
#include "patqsym/family.hpp"
#include "patqsym/io.hpp"
#include "patqsym/perm.hpp"
#include "patqsym/qsym.hpp"
#include "patqsym/verify.hpp"

namespace {

using namespace patqsym;

constexpr int kExitOk = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string default_cache_path() {
    const char* xdg = std::getenv("XDG_DATA_HOME");
    if (xdg && *xdg) return std::string(xdg) + "/patqsym/kostka.tbl";
    const char* home = std::getenv("HOME");
    if (home && *home) return std::string(home) + "/.local/share/patqsym/kostka.tbl";
    return "";
}

// Key=value lines, '#' comments. Recognized keys match the long flag names.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos) throw parse_error("expected key=value", lineno);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "format") cfg.output_format = parse_format(val);
            else if (key == "threads") cfg.threads = static_cast<unsigned>(std::stoul(val));
            else if (key == "budget") cfg.node_budget = std::stoull(val);
            else if (key == "cap") cfg.enumeration_cap = std::stoi(val);
            else if (key == "samples") cfg.sample_count = std::stoull(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "cache") cfg.cache_path = val;
            else if (key == "partial") cfg.partial_allowed = val == "true" || val == "1";
            else throw parse_error("unknown config key '" + key + "'", lineno);
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception&) {
            throw parse_error("bad value for '" + key + "'", lineno);
        }
    }
}

void apply_env(RunConfig& cfg) {
    auto get = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (v && *v) return std::string(v);
        return std::nullopt;
    };
    try {
        if (auto v = get("PATQSYM_FORMAT")) cfg.output_format = parse_format(*v);
        if (auto v = get("PATQSYM_THREADS")) cfg.threads = static_cast<unsigned>(std::stoul(*v));
        if (auto v = get("PATQSYM_BUDGET")) cfg.node_budget = std::stoull(*v);
        if (auto v = get("PATQSYM_CAP")) cfg.enumeration_cap = std::stoi(*v);
        if (auto v = get("PATQSYM_SAMPLES")) cfg.sample_count = std::stoull(*v);
        if (auto v = get("PATQSYM_SEED")) cfg.seed = std::stoull(*v);
        if (auto v = get("PATQSYM_CACHE")) cfg.cache_path = *v;
        if (auto v = get("PATQSYM_PARTIAL")) cfg.partial_allowed = *v == "true" || *v == "1";
    } catch (const precondition_error&) {
        throw;
    } catch (const std::exception& e) {
        throw precondition_error(std::string("bad environment value: ") + e.what());
    }
}

void emit_perm_set(const PermSet& s, OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::text:
        for (const auto& p : s.members()) std::cout << p.str() << '\n';
        break;
    case OutputFormat::csv:
        std::cout << "permutation\n";
        for (const auto& p : s.members()) std::cout << io::csv_quote(p.str()) << '\n';
        break;
    case OutputFormat::machine: {
        nlohmann::json j;
        j["degree"] = s.degree();
        j["members"] = nlohmann::json::array();
        for (const auto& p : s.members()) j["members"].push_back(p.entries());
        std::cout << j.dump() << '\n';
        break;
    }
    }
}

void emit_family(const SetFamily& f, OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::text:
        io::write_family(std::cout, f);
        break;
    case OutputFormat::csv:
        std::cout << "set\n";
        for (const auto& b : f.sets) std::cout << io::csv_quote(b.str()) << '\n';
        break;
    case OutputFormat::machine: {
        nlohmann::json j;
        j["ground_n"] = f.ground_n;
        j["sets"] = nlohmann::json::array();
        for (const auto& b : f.sets) j["sets"].push_back(b.elements());
        std::cout << j.dump() << '\n';
        break;
    }
    }
}

void emit_profile(const IntersectionProfile& p, OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::text:
        std::cout << p.str() << '\n';
        break;
    case OutputFormat::csv:
        std::cout << "field,value\nuniform_k," << p.uniform_k.str() << "\nadjacent_l1,"
                  << p.adjacent_l1.str() << "\ndistant_l2," << p.distant_l2.str()
                  << "\ndistinct," << (p.distinct ? "true" : "false") << '\n';
        break;
    case OutputFormat::machine: {
        nlohmann::json j;
        j["uniform_k"] = p.uniform_k.str();
        j["adjacent_l1"] = p.adjacent_l1.str();
        j["distant_l2"] = p.distant_l2.str();
        j["distinct"] = p.distinct;
        std::cout << j.dump() << '\n';
        break;
    }
    }
}

int report_exit(const CheckReport& rep) {
    switch (rep.verdict) {
    case Verdict::holds: return kExitOk;
    case Verdict::fails: return kExitFails;
    default: return kExitBudget;
    }
}

struct WindowSpec {
    int from = 1;
    int to = 1;
};

WindowSpec parse_window(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw precondition_error("window must be given as <from>:<to>");
    try {
        WindowSpec w{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
        if (w.from < 1 || w.from > w.to)
            throw precondition_error("window must satisfy 1 <= from <= to");
        return w;
    } catch (const precondition_error&) {
        throw;
    } catch (const std::exception&) {
        throw precondition_error("bad window '" + s + "'");
    }
}

// Classifies every size-p pattern set in S_k by windowed symmetric avoidance.
int run_census(int k, int p, WindowSpec window, const RunConfig& cfg) {
    if (k < 1 || p < 1) throw precondition_error("census requires k >= 1 and p >= 1");
    const PermSet sk = symmetric_group(k, cfg.enumeration_cap);
    const std::size_t N = sk.size();
    if (p > static_cast<int>(N)) throw precondition_error("census size exceeds |S_k|");
    const Integer declared =
        binomial(N, p) * Integer(static_cast<long>(window.to - window.from + 1));
    std::uint64_t limit = std::uint64_t(-1);
    bool partial = false;
    if (declared > Integer(static_cast<unsigned long>(cfg.node_budget))) {
        if (!cfg.partial_allowed)
            throw budget_error("census declares " + declared.get_str() +
                               " window checks, over budget " +
                               std::to_string(cfg.node_budget) + "; rerun with --partial");
        partial = true;
        limit = cfg.node_budget;
    }

    if (cfg.output_format == OutputFormat::csv)
        std::cout << "patterns,symmetric_window,first_failure\n";
    nlohmann::json rows = nlohmann::json::array();

    std::uint64_t used = 0;
    std::uint64_t tested = 0, avoided = 0;
    std::vector<std::size_t> idx(p);
    bool out_of_steam = false;
    auto rec = [&](auto&& self, int slot, std::size_t start) -> void {
        if (out_of_steam) return;
        if (slot == p) {
            std::vector<Permutation> members;
            for (std::size_t i : idx) members.push_back(sk.members()[i]);
            const PermSet pi(k, std::move(members));
            int first_failure = 0;
            for (int n = window.from; n <= window.to; ++n) {
                if (used == limit) {
                    out_of_steam = true;
                    return;
                }
                ++used;
                if (!is_symmetric(generating_function(avoiders(n, pi, cfg.enumeration_cap)))) {
                    first_failure = n;
                    break;
                }
            }
            ++tested;
            if (!first_failure) ++avoided;
            switch (cfg.output_format) {
            case OutputFormat::text:
                std::cout << pi.str() << " symmetric_window="
                          << (first_failure ? "false" : "true");
                if (first_failure) std::cout << " first_failure=" << first_failure;
                std::cout << '\n';
                break;
            case OutputFormat::csv:
                std::cout << io::csv_quote(pi.str()) << ','
                          << (first_failure ? "false" : "true") << ','
                          << (first_failure ? std::to_string(first_failure) : "") << '\n';
                break;
            case OutputFormat::machine:
                rows.push_back({{"patterns", pi.str()},
                                {"symmetric_window", first_failure == 0},
                                {"first_failure", first_failure}});
                break;
            }
            return;
        }
        for (std::size_t i = start; i + (p - 1 - slot) < N; ++i) {
            idx[slot] = i;
            self(self, slot + 1, i + 1);
            if (out_of_steam) return;
        }
    };
    rec(rec, 0, 0);

    if (cfg.output_format == OutputFormat::machine) {
        nlohmann::json j;
        j["k"] = k;
        j["size"] = p;
        j["window"] = {window.from, window.to};
        j["partial"] = partial && out_of_steam;
        j["tested"] = tested;
        j["symmetric_window"] = avoided;
        j["rows"] = std::move(rows);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "tested=" << tested << " symmetric_window=" << avoided;
        if (partial && out_of_steam) std::cout << " (partial)";
        std::cout << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pattern-avoidance / quasisymmetric-function toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());

    std::string opt_format, opt_cache, opt_config;
    unsigned opt_threads = 0;
    std::uint64_t opt_budget = 0, opt_samples = 0, opt_seed = 0;
    int opt_cap = 0;
    bool opt_partial = false, opt_no_cache = false;

    auto* f_format = app.add_option("--format", opt_format, "output format: text, csv, machine");
    auto* f_threads = app.add_option("--threads", opt_threads, "worker threads");
    auto* f_budget = app.add_option("--budget", opt_budget, "node/candidate budget");
    auto* f_cap = app.add_option("--cap", opt_cap, "enumeration cap for S_n (default 10)");
    auto* f_samples = app.add_option("--samples", opt_samples, "sample count for partial sweeps");
    auto* f_seed = app.add_option("--seed", opt_seed, "seed for sampled runs");
    auto* f_cache = app.add_option("--cache", opt_cache, "kostka cache file path");
    app.add_flag("--no-cache", opt_no_cache, "disable the persistent kostka cache");
    auto* f_partial = app.add_flag("--partial", opt_partial, "allow partial over-budget runs");
    app.add_option("--config", opt_config, "config file (key=value lines)");

    // avoid
    auto* cmd_avoid = app.add_subcommand("avoid", "enumerate S_n(Pi)");
    int avoid_n = 0;
    std::string avoid_patterns;
    cmd_avoid->add_option("n", avoid_n, "degree")->required();
    cmd_avoid->add_option("--patterns", avoid_patterns, "pattern file")->required();

    // qsym / check-sym / check-schur
    int qsym_n = 0;
    std::string qsym_set;
    auto* cmd_qsym = app.add_subcommand("qsym", "print Q_n(S) in the monomial basis");
    cmd_qsym->add_option("n", qsym_n, "degree")->required();
    cmd_qsym->add_option("--set", qsym_set, "permutation set file")->required();

    int csym_n = 0;
    std::string csym_set;
    auto* cmd_csym = app.add_subcommand("check-sym", "is Q_n(S) symmetric");
    cmd_csym->add_option("n", csym_n, "degree")->required();
    cmd_csym->add_option("--set", csym_set, "permutation set file")->required();

    int cschur_n = 0;
    std::string cschur_set;
    auto* cmd_cschur = app.add_subcommand("check-schur", "is S Schur-positive");
    cmd_cschur->add_option("n", cschur_n, "degree")->required();
    cmd_cschur->add_option("--set", cschur_set, "permutation set file")->required();

    // family
    auto* cmd_family = app.add_subcommand("family", "set-family operations");
    cmd_family->require_subcommand(1);
    std::string fam_set, fam_file;
    auto* cmd_extract = cmd_family->add_subcommand("extract", "descent family of a set");
    cmd_extract->add_option("--set", fam_set, "permutation set file")->required();
    auto* cmd_classify = cmd_family->add_subcommand("classify", "intersection profile");
    cmd_classify->add_option("--family", fam_file, "family file")->required();
    auto* cmd_search = cmd_family->add_subcommand("search", "search for an extremal family");
    int se_n = 0, se_k = 0, se_l1 = 0, se_l2 = 0, se_m = 0;
    bool se_iso = false;
    cmd_search->add_option("--n", se_n, "ground size")->required();
    cmd_search->add_option("--k", se_k, "set size")->required();
    cmd_search->add_option("--l1", se_l1, "adjacent intersection")->required();
    cmd_search->add_option("--l2", se_l2, "distant intersection")->required();
    cmd_search->add_option("--m", se_m, "family size")->required();
    cmd_search->add_flag("--iso-prune", se_iso, "prune non-canonical prefixes");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a named check");
    cmd_verify->require_subcommand(1);
    int v_k = 5, v_p = 3;
    auto* v_main = cmd_verify->add_subcommand("main-theorem",
                                              "no small pattern set has a symmetric complement");
    v_main->add_option("--k", v_k, "pattern degree")->required();
    v_main->add_option("--p", v_p, "pattern set size")->required();

    int v_n = 5, v_max_size = 4;
    auto* v_min = cmd_verify->add_subcommand("min-symmetric-size",
                                             "minimal non-monotone symmetric set size");
    v_min->add_option("--n", v_n, "degree")->required();
    v_min->add_option("--max-size", v_max_size, "largest subset size to sweep")->required();

    std::string v_patterns;
    int v_from = 1, v_to = 8;
    auto* v_avoided = cmd_verify->add_subcommand("symmetrically-avoided",
                                                 "windowed symmetric avoidance");
    v_avoided->add_option("--patterns", v_patterns, "pattern file")->required();
    v_avoided->add_option("--from", v_from, "window start");
    v_avoided->add_option("--to", v_to, "window end");

    int v_sn = 5;
    auto* v_sizen = cmd_verify->add_subcommand("size-n-set",
                                               "the size-n symmetric, non-Schur-positive set");
    v_sizen->add_option("--n", v_sn, "degree")->required();

    int v_bose_nmax = 6;
    auto* v_bose = cmd_verify->add_subcommand("bose-generalized",
                                              "extremal bound m <= n for ordered families");
    v_bose->add_option("--n-max", v_bose_nmax, "largest ground size")->required();

    int v_six_kmax = 4, v_six_nmax = 10;
    auto* v_six = cmd_verify->add_subcommand("six-family-bound",
                                             "no 6-member family when 2*l2 = l1 + k");
    v_six->add_option("--k-max", v_six_kmax, "largest set size")->required();
    v_six->add_option("--n-max", v_six_nmax, "largest ground size")->required();

    int v_cs_nmax = 8;
    auto* v_classic = cmd_verify->add_subcommand("classical-sanity",
                                                 "catalan counts and monotone-pair emptiness");
    v_classic->add_option("--n-max", v_cs_nmax, "largest degree")->required();

    // census
    auto* cmd_census = app.add_subcommand("census", "classify all size-p pattern sets");
    int census_k = 0, census_p = 0;
    std::string census_window = "1:6";
    cmd_census->add_option("k", census_k, "pattern degree")->required();
    cmd_census->add_option("--size", census_p, "pattern set size")->required();
    cmd_census->add_option("--window", census_window, "degree window <from>:<to>");

    // let the global options appear after a subcommand name as well
    auto enable_fallthrough = [](CLI::App* node, auto&& self) -> void {
        for (CLI::App* sub : node->get_subcommands([](CLI::App*) { return true; })) {
            sub->fallthrough();
            self(sub, self);
        }
    };
    enable_fallthrough(&app, enable_fallthrough);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        // precedence: flags > environment > config file > defaults
        if (!opt_config.empty()) apply_config_file(opt_config, cfg);
        apply_env(cfg);
        if (f_format->count()) cfg.output_format = parse_format(opt_format);
        if (f_threads->count()) cfg.threads = opt_threads;
        if (f_budget->count()) cfg.node_budget = opt_budget;
        if (f_cap->count()) cfg.enumeration_cap = opt_cap;
        if (f_samples->count()) cfg.sample_count = opt_samples;
        if (f_seed->count()) cfg.seed = opt_seed;
        if (f_cache->count()) cfg.cache_path = opt_cache;
        if (f_partial->count()) cfg.partial_allowed = opt_partial;
        cfg.validate();

        if (!opt_no_cache) {
            if (cfg.cache_path.empty()) cfg.cache_path = default_cache_path();
            if (!cfg.cache_path.empty()) kostka_cache().attach(cfg.cache_path);
        }
        struct CacheSaver {
            ~CacheSaver() { kostka_cache().save(); }
        } cache_saver;

        const OutputFormat fmt = cfg.output_format;

        if (*cmd_avoid) {
            emit_perm_set(avoiders(avoid_n, io::read_perm_set_file(avoid_patterns),
                                   cfg.enumeration_cap),
                          fmt);
            return kExitOk;
        }
        if (*cmd_qsym) {
            const PermSet s = io::read_perm_set_file(qsym_set);
            if (s.degree() != qsym_n)
                throw precondition_error("set has degree " + std::to_string(s.degree()) +
                                         ", expected " + std::to_string(qsym_n));
            io::write_triples(std::cout, io::qsym_triples(generating_function(s)), qsym_n, fmt);
            return kExitOk;
        }
        if (*cmd_csym) {
            const PermSet s = io::read_perm_set_file(csym_set);
            if (s.degree() != csym_n)
                throw precondition_error("set has degree " + std::to_string(s.degree()) +
                                         ", expected " + std::to_string(csym_n));
            const bool sym = is_symmetric(generating_function(s));
            if (fmt == OutputFormat::machine)
                std::cout << nlohmann::json{{"symmetric", sym}}.dump() << '\n';
            else
                std::cout << "symmetric: " << (sym ? "true" : "false") << '\n';
            return sym ? kExitOk : kExitFails;
        }
        if (*cmd_cschur) {
            const PermSet s = io::read_perm_set_file(cschur_set);
            if (s.degree() != cschur_n)
                throw precondition_error("set has degree " + std::to_string(s.degree()) +
                                         ", expected " + std::to_string(cschur_n));
            const auto [positive, expansion] = is_schur_positive(s);
            if (fmt == OutputFormat::machine) {
                nlohmann::json j;
                j["symmetric"] = expansion.has_value();
                j["schur_positive"] = positive;
                j["expansion"] = nlohmann::json::array();
                if (expansion)
                    for (const auto& t : io::series_triples(*expansion, "s"))
                        j["expansion"].push_back({t.basis, t.key_parts, t.coeff});
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "symmetric: " << (expansion ? "true" : "false") << '\n';
                std::cout << "schur_positive: " << (positive ? "true" : "false") << '\n';
                if (expansion)
                    io::write_triples(std::cout, io::series_triples(*expansion, "s"), cschur_n,
                                      fmt);
            }
            return positive ? kExitOk : kExitFails;
        }
        if (*cmd_extract) {
            emit_family(extract_family(io::read_perm_set_file(fam_set)), fmt);
            return kExitOk;
        }
        if (*cmd_classify) {
            emit_profile(classify(io::read_family_file(fam_file)), fmt);
            return kExitOk;
        }
        if (*cmd_search) {
            SearchOptions opt;
            opt.node_budget = cfg.node_budget;
            opt.iso_prune = se_iso;
            opt.threads = cfg.threads;
            const auto result = search_extremal(se_n, se_k, se_l1, se_l2, se_m, opt);
            if (!result) {
                std::cout << "no family\n";
                return kExitFails;
            }
            emit_family(*result, fmt);
            return kExitOk;
        }
        if (*cmd_verify) {
            CheckReport rep;
            if (*v_main) rep = check_main_theorem(v_k, v_p, cfg);
            else if (*v_min) rep = check_min_symmetric_size(v_n, v_max_size, cfg);
            else if (*v_avoided)
                rep = check_symmetrically_avoided(io::read_perm_set_file(v_patterns), v_from,
                                                  v_to, cfg);
            else if (*v_sizen) rep = check_size_n_set(v_sn, cfg);
            else if (*v_bose) rep = check_bose_generalized(v_bose_nmax, cfg);
            else if (*v_six) rep = check_six_family_bound(v_six_kmax, v_six_nmax, cfg);
            else rep = check_classical_sanity(v_cs_nmax, cfg);
            io::write_report(std::cout, rep, fmt);
            return report_exit(rep);
        }
        if (*cmd_census) {
            return run_census(census_k, census_p, parse_window(census_window), cfg);
        }
        throw precondition_error("no subcommand selected");
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitUsage;
    }
}
