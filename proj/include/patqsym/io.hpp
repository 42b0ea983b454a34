#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "patqsym/config.hpp"
#include "patqsym/errors.hpp"
#include "patqsym/family.hpp"
#include "patqsym/perm.hpp"
#include "patqsym/qsym.hpp"
#include "patqsym/verify.hpp"

namespace patqsym::io {

using nlohmann::json;

// One-line notation, whitespace- or comma-separated, optional surrounding
// brackets: "[2,4,1,3]", "2 4 1 3" and "2,4,1,3" all parse to the same
// permutation. The degree is inferred from the number of entries.
inline Permutation parse_permutation(const std::string& text, std::size_t line = 0) {
    std::string body = text;
    const auto first = body.find_first_not_of(" \t");
    const auto last = body.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw parse_error("empty permutation", line);
    body = body.substr(first, last - first + 1);
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw parse_error("unbalanced bracket", line);
        body = body.substr(1, body.size() - 2);
    }
    for (char& c : body)
        if (c == ',') c = ' ';
    std::istringstream in(body);
    std::vector<int> entries;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            entries.push_back(v);
        } catch (const std::exception&) {
            throw parse_error("bad permutation entry '" + tok + "'", line);
        }
    }
    try {
        return Permutation(std::move(entries));
    } catch (const precondition_error& e) {
        throw parse_error(e.what(), line);
    }
}

// One permutation per line; blank lines and '#' comments are ignored. All
// permutations must share one degree.
inline PermSet read_perm_set(std::istream& in) {
    std::vector<Permutation> members;
    std::string line;
    std::size_t lineno = 0;
    int degree = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Permutation p = parse_permutation(line, lineno);
        if (degree == 0) degree = p.degree();
        if (p.degree() != degree)
            throw parse_error("degree " + std::to_string(p.degree()) +
                                  " does not match earlier degree " + std::to_string(degree),
                              lineno);
        for (const auto& q : members)
            if (q == p) throw parse_error("duplicate permutation " + p.str(), lineno);
        members.push_back(std::move(p));
    }
    if (members.empty()) throw parse_error("no permutations in input");
    return PermSet(degree, std::move(members));
}

inline PermSet read_perm_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return read_perm_set(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

// Family format: a header line "n=<ground size>", then one set per line as
// comma-separated elements; "-" denotes the empty set.
inline SetFamily read_family(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    int ground = 0;
    std::vector<Bitset> sets;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (ground == 0) {
            if (line.rfind("n=", 0) != 0) throw parse_error("expected header 'n=<int>'", lineno);
            try {
                ground = std::stoi(line.substr(2));
            } catch (const std::exception&) {
                throw parse_error("bad ground size '" + line.substr(2) + "'", lineno);
            }
            if (ground < 1) throw parse_error("ground size must be >= 1", lineno);
            continue;
        }
        Bitset b(ground);
        if (line != "-") {
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    std::size_t used = 0;
                    const int e = std::stoi(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    b.set(e);
                } catch (const precondition_error& e) {
                    throw parse_error(e.what(), lineno);
                } catch (const std::exception&) {
                    throw parse_error("bad set element '" + tok + "'", lineno);
                }
            }
        }
        sets.push_back(std::move(b));
    }
    if (ground == 0) throw parse_error("missing family header 'n=<int>'");
    return SetFamily(ground, std::move(sets));
}

inline SetFamily read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return read_family(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline void write_family(std::ostream& out, const SetFamily& f) {
    out << "n=" << f.ground_n << '\n';
    for (const auto& b : f.sets) out << b.str() << '\n';
}

// (basis, key, coefficient) triples in canonical key order.
struct Triple {
    std::string basis;
    std::string key;
    std::vector<int> key_parts;
    std::string coeff;
};

inline std::vector<Triple> qsym_triples(const QSymElement& f) {
    std::vector<Triple> out;
    for (const auto& [mask, c] : f.terms()) {
        Composition a = Composition::from_subset_mask(mask, f.degree());
        out.push_back({"M", a.str(), a.parts(), c.get_str()});
    }
    return out;
}

template <class Tag>
inline std::vector<Triple> series_triples(const PartitionSeries<Tag>& g, std::string basis) {
    std::vector<Triple> out;
    for (const auto& [lam, c] : g.terms())
        out.push_back({basis, lam.str(), lam.parts(), c.get_str()});
    return out;
}

inline void write_triples(std::ostream& out, const std::vector<Triple>& triples, int degree,
                          OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::text:
        for (const auto& t : triples) out << t.basis << ' ' << t.key << ' ' << t.coeff << '\n';
        break;
    case OutputFormat::csv:
        out << "basis,key,coefficient\n";
        for (const auto& t : triples)
            out << t.basis << ",\"" << t.key << "\"," << t.coeff << '\n';
        break;
    case OutputFormat::machine: {
        json j;
        j["degree"] = degree;
        j["terms"] = json::array();
        for (const auto& t : triples) j["terms"].push_back({t.basis, t.key_parts, t.coeff});
        out << j.dump() << '\n';
        break;
    }
    }
}

inline json report_to_json(const CheckReport& rep) {
    json j;
    j["check"] = rep.name;
    j["parameters"] = json::array();
    for (const auto& [k, v] : rep.parameters) j["parameters"].push_back({k, v});
    j["verdict"] = verdict_name(rep.verdict);
    j["partial"] = rep.partial;
    j["witnesses"] = rep.witnesses;
    j["sub_results"] = json::array();
    for (const auto& s : rep.sub_results)
        j["sub_results"].push_back({{"key", s.key}, {"verdict", s.verdict}, {"detail", s.detail}});
    j["stats"] = {{"nodes", rep.stats.nodes},
                  {"candidates", rep.stats.candidates},
                  {"wall_ms", rep.stats.wall_ms}};
    return j;
}

inline CheckReport report_from_json(const json& j) {
    CheckReport rep;
    rep.name = j.at("check").get<std::string>();
    for (const auto& pair : j.at("parameters"))
        rep.parameters.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    const std::string v = j.at("verdict").get<std::string>();
    rep.verdict = v == "holds"          ? Verdict::holds
                  : v == "fails"        ? Verdict::fails
                  : v == "out-of-budget" ? Verdict::out_of_budget
                                         : throw parse_error("unknown verdict '" + v + "'");
    rep.partial = j.at("partial").get<bool>();
    rep.witnesses = j.at("witnesses").get<std::vector<std::string>>();
    for (const auto& s : j.at("sub_results"))
        rep.sub_results.push_back({s.at("key").get<std::string>(),
                                   s.at("verdict").get<std::string>(),
                                   s.at("detail").get<std::string>()});
    rep.stats.nodes = j.at("stats").at("nodes").get<std::uint64_t>();
    rep.stats.candidates = j.at("stats").at("candidates").get<std::uint64_t>();
    rep.stats.wall_ms = j.at("stats").at("wall_ms").get<double>();
    return rep;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

inline void write_report(std::ostream& out, const CheckReport& rep, OutputFormat fmt) {
    switch (fmt) {
    case OutputFormat::text:
        out << "check: " << rep.name << '\n';
        for (const auto& [k, v] : rep.parameters) out << "param: " << k << '=' << v << '\n';
        out << "verdict: " << verdict_name(rep.verdict) << '\n';
        if (rep.partial) out << "partial: true\n";
        for (const auto& s : rep.sub_results)
            out << "sub: " << s.key << " | " << s.verdict
                << (s.detail.empty() ? "" : " | " + s.detail) << '\n';
        for (const auto& w : rep.witnesses) out << "witness: " << w << '\n';
        out << "stats: nodes=" << rep.stats.nodes << " candidates=" << rep.stats.candidates
            << " wall_ms=" << rep.stats.wall_ms << '\n';
        break;
    case OutputFormat::csv:
        out << "check,key,verdict,detail\n";
        out << rep.name << ",(overall)," << verdict_name(rep.verdict) << ','
            << (rep.partial ? "partial" : "") << '\n';
        for (const auto& s : rep.sub_results)
            out << rep.name << ',' << csv_quote(s.key) << ',' << s.verdict << ','
                << csv_quote(s.detail) << '\n';
        for (const auto& w : rep.witnesses)
            out << rep.name << ",witness,fails," << csv_quote(w) << '\n';
        break;
    case OutputFormat::machine:
        out << report_to_json(rep).dump() << '\n';
        break;
    }
}

} // namespace patqsym::io
