#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <catch2/catch.hpp>
#include <json.hpp>

#include "patqsym/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string cli_bin() {
    const char* bin = std::getenv("PATQSYM_CLI_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

std::string data_dir() {
    const char* dir = std::getenv("PATQSYM_TEST_DATA");
    REQUIRE(dir != nullptr);
    return dir;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + cli_bin() + " --no-cache " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                             "/" + name;
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

} // namespace

TEST_CASE("check-sym on the knuth pair") {
    const RunResult r = run("check-sym 4 --set " + data_dir() + "/knuth4.txt");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("symmetric: true") != std::string::npos);
}

TEST_CASE("check-sym verdict failure exit code") {
    const std::string path = write_temp("patqsym_single.txt", "2 1 3\n");
    const RunResult r = run("check-sym 3 --set " + path);
    REQUIRE(r.exit_code == 1);
    REQUIRE(r.output.find("symmetric: false") != std::string::npos);
}

TEST_CASE("check-schur on the knuth pair") {
    const RunResult r = run("check-schur 4 --set " + data_dir() + "/knuth4.txt");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("schur_positive: true") != std::string::npos);
    REQUIRE(r.output.find("s (2,2) 1") != std::string::npos);
}

TEST_CASE("family search exit codes") {
    const RunResult none = run("family search --n 5 --k 2 --l1 0 --l2 1 --m 6");
    REQUIRE(none.exit_code == 1);
    REQUIRE(none.output.find("no family") != std::string::npos);

    const RunResult found = run("family search --n 5 --k 2 --l1 0 --l2 1 --m 5");
    REQUIRE(found.exit_code == 0);
    REQUIRE(found.output.find("1,2") != std::string::npos);

    const RunResult budget = run("--budget 5 family search --n 6 --k 3 --l1 1 --l2 1 --m 7");
    REQUIRE(budget.exit_code == 3);
}

TEST_CASE("avoid enumerates in lex order") {
    const std::string path = write_temp("patqsym_123.txt", "# increasing pattern\n1 2 3\n");
    const RunResult r = run("avoid 4 --patterns " + path);
    REQUIRE(r.exit_code == 0);
    std::size_t lines = 0;
    for (char c : r.output)
        if (c == '\n') ++lines;
    REQUIRE(lines == 14);
    REQUIRE(r.output.rfind("[1,4,3,2]", 0) == 0); // lex-least avoider first
}

TEST_CASE("qsym machine output") {
    const RunResult r = run("--format machine qsym 4 --set " + data_dir() + "/knuth4.txt");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["degree"] == 4);
    REQUIRE(j["terms"].size() == 5);
    REQUIRE(j["terms"][0][0] == "M");
}

TEST_CASE("malformed files exit 2 with line diagnostics") {
    const std::string path = write_temp("patqsym_bad.txt", "1 2 3\n1 2 x\n");
    const RunResult r = run("avoid 4 --patterns " + path);
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("line 2") != std::string::npos);

    const std::string mixed = write_temp("patqsym_mixed.txt", "1 2 3\n1 2 4 3\n");
    REQUIRE(run("avoid 4 --patterns " + mixed).exit_code == 2);
}

TEST_CASE("verify precondition and verdict exits") {
    REQUIRE(run("verify main-theorem --k 4 --p 3").exit_code == 2);
    REQUIRE(run("verify min-symmetric-size --n 4 --max-size 2").exit_code == 1);
    REQUIRE(run("verify size-n-set --n 4").exit_code == 0);
    REQUIRE(run("verify classical-sanity --n-max 4").exit_code == 0);
}

TEST_CASE("machine report round-trips") {
    const RunResult r = run("--format machine verify size-n-set --n 4");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    const patqsym::CheckReport rep = patqsym::io::report_from_json(j);
    REQUIRE(rep.name == "size-n-set");
    REQUIRE(rep.verdict == patqsym::Verdict::holds);
    REQUIRE(patqsym::io::report_to_json(rep).dump() + "\n" == r.output);
}

TEST_CASE("census classifies singletons of S_3") {
    const RunResult r = run("census 3 --size 1 --window 1:5");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("tested=6 symmetric_window=2") != std::string::npos);
    REQUIRE(r.output.find("{[1,2,3]} symmetric_window=true") != std::string::npos);
    REQUIRE(r.output.find("{[3,2,1]} symmetric_window=true") != std::string::npos);
}

TEST_CASE("census refuses over-budget runs unless partial") {
    REQUIRE(run("census 4 --size 2 --window 1:8 --budget 100").exit_code == 3);
    const RunResult partial = run("census 4 --size 2 --window 1:8 --budget 100 --partial");
    REQUIRE(partial.exit_code == 0);
    REQUIRE(partial.output.find("(partial)") != std::string::npos);
}

TEST_CASE("config precedence: flags over environment over file") {
    const std::string cfg_path = write_temp("patqsym_cfg.txt", "cap = 4\n");
    const std::string pat = write_temp("patqsym_cap_pat.txt", "1 2 3\n");

    // config file caps enumeration at 4, so degree 5 is over budget
    REQUIRE(run("avoid 5 --patterns " + pat + " --config " + cfg_path).exit_code == 3);
    // environment overrides the file
    REQUIRE(run("avoid 5 --patterns " + pat + " --config " + cfg_path,
                "PATQSYM_CAP=5 ")
                .exit_code == 0);
    // flag overrides the environment
    REQUIRE(run("avoid 5 --patterns " + pat + " --cap 5", "PATQSYM_CAP=4 ").exit_code == 0);
    REQUIRE(run("avoid 5 --patterns " + pat, "PATQSYM_CAP=4 ").exit_code == 3);
}

TEST_CASE("family extract and classify round trip") {
    const RunResult ext = run("family extract --set " + data_dir() + "/knuth4.txt");
    REQUIRE(ext.exit_code == 0);
    REQUIRE(ext.output.rfind("n=2\n", 0) == 0);

    const std::string fam = write_temp("patqsym_family.txt", ext.output);
    const RunResult cls = run("family classify --family " + fam);
    REQUIRE(cls.exit_code == 0);
    REQUIRE(cls.output.find("k=1 l1=0 l2=1 distinct=false") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    REQUIRE(run("avoid").exit_code == 2);
    REQUIRE(run("no-such-command").exit_code == 2);
    REQUIRE(run("--format nonsense verify classical-sanity --n-max 3").exit_code == 2);
}
