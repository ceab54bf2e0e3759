#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = LIPFIX_CLI_PATH;

struct Scratch {
    fs::path dir;
    Scratch() {
        std::string tmpl = (fs::temp_directory_path() / "lipfix_cli_XXXXXX").string();
        REQUIRE(::mkdtemp(tmpl.data()) != nullptr);
        dir = tmpl;
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + kCli + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("audit exit codes") {
    Scratch s;
    CHECK(run("audit --corpus ex32_log -o " + (s / "a.json")) == 0);
    const auto doc = nlohmann::json::parse(slurp(s / "a.json"));
    CHECK(doc["schema"] == "lipfix/1");
    CHECK(doc["command"] == "audit");
    CHECK(run("audit --corpus ex33_gamma_one -o " + (s / "b.json")) == 2);
    CHECK(run("audit --corpus nope") == 3);
    CHECK(run("audit") == 3);
    CHECK(run("audit --corpus ex32_log --grid 1") == 3);
    CHECK(run("frobnicate") == 3);
}

TEST_CASE("solve then verify") {
    Scratch s;
    CHECK(run("solve --corpus ex32_log --epsilon 1e-6 --grid 513 -o " + (s / "phi.csv")) == 0);
    REQUIRE(fs::exists(s / "phi.csv"));
    REQUIRE(fs::exists(s / "phi.json"));
    const std::string csv = slurp(s / "phi.csv");
    CHECK(csv.rfind("x,value,expected\n", 0) == 0);
    const auto meta = nlohmann::json::parse(slurp(s / "phi.json"));
    CHECK(meta["solution"]["N"] == 25);
    CHECK(run("verify --corpus ex32_log --phi " + (s / "phi.csv") + " -o " + (s / "v.json")) == 0);
    const auto v = nlohmann::json::parse(slurp(s / "v.json"));
    CHECK(v["residual"]["bound7"]["ok"] == true);
    CHECK(v["residual"]["bound8"]["ok"] == true);

    // A candidate far too large fails bound 8.
    write(s / "bad.csv", "x,value\n1,100\n16,100\n");
    CHECK(run("verify --corpus ex32_log --phi " + (s / "bad.csv")) == 1);
    // Wrong domain.
    write(s / "off.csv", "x,value\n0,0\n1,0\n");
    CHECK(run("verify --corpus ex32_log --phi " + (s / "off.csv")) == 3);
    CHECK(run("verify --corpus ex32_log --phi " + (s / "missing.csv")) == 3);
}

TEST_CASE("rejections from solve") {
    CHECK(run("solve --corpus ex33_gamma_one") == 2);
}

TEST_CASE("input files") {
    Scratch s;
    CHECK(run("corpus-export --corpus perpetuity_two_atom -o " + (s / "p.json")) == 0);
    CHECK(run("solve --input " + (s / "p.json") + " --grid 65 -o " + (s / "p.csv")) == 0);
    write(s / "broken.json", "{ not json");
    CHECK(run("audit --input " + (s / "broken.json")) == 3);
    write(s / "syntax.json",
          R"({"domain": {"lo": 0, "hi": 1}, "atoms": [{"weight": 1, "g": 0.5, "map": "x/("}], "F": "x", "lambda": 0.5})");
    CHECK(run("audit --input " + (s / "syntax.json")) == 3);
    // Open domain with two atoms: the pointwise backend would need 2^N points.
    write(s / "open.json",
          R"({"domain": {"lo": 0, "hi": 1}, "atoms": [{"weight": 0.5, "g": 1, "map": "0.9*x+0.5"},)"
          R"( {"weight": 0.5, "g": -0.5, "map": "0.9*x"}], "F": "x", "lambda": 0.675})");
    CHECK(run("solve --input " + (s / "open.json") + " --epsilon 1e-12 --grid 9") == 4);
    CHECK(run("solve --input " + (s / "open.json") + " --epsilon 1e-2 --grid 9 -o " + (s / "o.csv")) == 0);
    write(s / "understated.json",
          R"({"domain": {"lo": 0, "hi": 1}, "atoms": [{"weight": 1, "g": 0.5, "map": "x/2"}], "F": "x", "lambda": 0.1})");
    CHECK(run("solve --input " + (s / "understated.json")) == 2);
}

TEST_CASE("corpus commands") {
    Scratch s;
    CHECK(run("corpus-list -o " + (s / "l.txt")) == 0);
    CHECK(slurp(s / "l.txt").find("ex32_log") != std::string::npos);
    CHECK(run("corpus-list --format json -o " + (s / "l.json")) == 0);
    CHECK(nlohmann::json::parse(slurp(s / "l.json"))["entries"].size() == 4);
    CHECK(run("corpus-export --corpus ex32_log -o " + (s / "e.json")) == 0);
    CHECK(slurp(s / "e.json") == slurp(LIPFIX_TEST_DATA "/ex32_log.json"));
    CHECK(run("corpus-export") == 3);
}

TEST_CASE("roundtrip command") {
    Scratch s;
    CHECK(run("roundtrip --corpus perpetuity_two_atom --grid 129 --count 3 -o " + (s / "r.json")) == 0);
    const auto doc = nlohmann::json::parse(slurp(s / "r.json"));
    CHECK(doc["roundtrip"]["ok"] == true);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    Scratch s;
    for (const std::string cmd : {"audit --corpus ex32_log", "solve --corpus ex32_log --grid 257 --format json",
                                  "roundtrip --corpus ex32_log --grid 129 --count 2"}) {
        CHECK(run(cmd + " -o " + (s / "one.json"), "LIPFIX_THREADS=1") == 0);
        CHECK(run(cmd + " -o " + (s / "two.json"), "LIPFIX_THREADS=1") == 0);
        CHECK(run(cmd + " -o " + (s / "four.json"), "LIPFIX_THREADS=4") == 0);
        const std::string a = slurp(s / "one.json");
        CHECK(!a.empty());
        CHECK(a == slurp(s / "two.json"));
        CHECK(a == slurp(s / "four.json"));
    }
}
