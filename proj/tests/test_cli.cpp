#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "asp_reader.hpp"
#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "trapcount/cnf.hpp"
#include "trapcount/sat.hpp"

namespace fs = std::filesystem;
using trapcount::cli::run;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Scratch directory holding the worked example inputs.
struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() / ("trapcount_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        write("ex.bnet", "a, a & !b\nb, a\n");
        write("beta.txt", "a = 0\nb = 0\n");
        write("star.txt", "b = *\n");
        write("x.txt", "b\n");
        write("broken.bnet", "a, a &\n");
        std::string sources;
        for (int i = 0; i < 10; ++i) sources += "s" + std::to_string(i) + ", s" + std::to_string(i) + "\n";
        write("sources.bnet", sources);
    }
    ~Workspace() { fs::remove_all(dir); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    std::string read(const std::string& name) const {
        std::ifstream in(dir / name);
        return {std::istreambuf_iterator<char>(in), {}};
    }
};

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("count subcommand on the worked example") {
    Workspace w;
    auto mts1 = invoke({"count", "--problem", "mts1", w.path("ex.bnet")});
    REQUIRE(mts1.code == 0);
    CHECK(json_of(mts1)["count"] == "1");
    CHECK(json_of(mts1)["mode"] == "exact");
    CHECK(json_of(mts1)["seed"].is_null());

    auto fix1 = invoke({"count", "--problem", "fix1", "--mode", "exact", w.path("ex.bnet")});
    CHECK(json_of(fix1)["count"] == "1");

    auto mts2 = invoke({"count", "--problem", "mts2", "--phenotype", w.path("star.txt"), w.path("ex.bnet")});
    CHECK(json_of(mts2)["count"] == "0");

    auto mts3 = invoke({"count", "--problem", "mts3", "--phenotype", w.path("beta.txt"), "--perturb", w.path("x.txt"),
                        w.path("ex.bnet")});
    REQUIRE(mts3.code == 0);
    const auto j = json_of(mts3);
    CHECK(j["count"] == "2");
    CHECK(j["robustness"] == "2/3");
    CHECK(j["robustness_decimal"] == "0.667");
    CHECK(j["cross_checked"] == true);
    CHECK(j["warnings"].size() == 1);
    CHECK(mts3.err.find("warning:") != std::string::npos);
}

TEST_CASE("tsv output mirrors the json report") {
    Workspace w;
    auto r = invoke({"count", "--problem", "mts1", "--format", "tsv", w.path("ex.bnet")});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header.rfind("problem\tmode\tcount\t", 0) == 0);
    CHECK(row.rfind("mts1\texact\t1\t", 0) == 0);
}

TEST_CASE("approximate fixed-point counting through the cli") {
    Workspace w;
    auto r = invoke({"count", "--problem", "fix1", "--mode", "approx", "--seed", "5", w.path("sources.bnet")});
    REQUIRE(r.code == 0);
    const auto j = json_of(r);
    CHECK(j["mode"] == "approx");
    CHECK(j["threshold"] == 73);
    CHECK(j["trials"] == 67);
    CHECK(j["seed"] == 5);
    const double estimate = std::stod(j["count"].get<std::string>());
    CHECK(estimate >= 1024 / 1.8);
    CHECK(estimate <= 1024 * 1.8);
}

TEST_CASE("reports are byte-identical apart from the timing") {
    Workspace w;
    auto strip = [](const std::string& s) { return std::regex_replace(s, std::regex("\"elapsed_ms\": [0-9.e+-]+"), ""); };
    const std::vector<std::string> args{"count", "--problem", "fix1", "--mode", "approx", "--seed", "11",
                                        w.path("sources.bnet")};
    CHECK(strip(invoke(args).out) == strip(invoke(args).out));
}

TEST_CASE("encode subcommand") {
    Workspace w;
    auto asp = invoke({"encode", "--target", "asp", "--problem", "mts3", "--phenotype", w.path("beta.txt"), "--perturb",
                       w.path("x.txt"), w.path("ex.bnet")});
    REQUIRE(asp.code == 0);
    CHECK(asp.out.rfind("p_a ; n_a.\np_a :- p_a, n_b.\n", 0) == 0);
    CHECK(asp.out.find("#show p_b__k/0.\n#show n_b__k/0.\n#show p_b__o/0.\n#show n_b__o/0.\n") != std::string::npos);
    const auto parsed = asp_text::read(asp.out);
    CHECK(parsed.shown.size() == 4);
    const std::set<trapcount::Atom> omega(parsed.shown.begin(), parsed.shown.end());
    CHECK(trapcount::projected_count(parsed.program, omega) == 2);

    auto cnf = invoke({"encode", "--target", "cnf", "--problem", "fix1", "-o", w.path("ex.cnf"), w.path("ex.bnet")});
    REQUIRE(cnf.code == 0);
    CHECK(cnf.out.empty());
    const auto text = w.read("ex.cnf");
    CHECK(text.find("c ind 1 2 0\n") != std::string::npos);
    const auto formula = trapcount::parse_dimacs(text);
    trapcount::SatSolver solver(formula);
    CHECK(trapcount::count_projected_upto(solver, formula.support, 10).count == 1);

    auto fix3 = invoke({"encode", "--target", "cnf", "--problem", "fix3", "--phenotype", w.path("beta.txt"), "--perturb",
                        w.path("x.txt"), w.path("ex.bnet")});
    REQUIRE(fix3.code == 0);
    const auto perturbed = trapcount::parse_dimacs(fix3.out);
    CHECK(perturbed.support.size() == 2);

    CHECK(invoke({"encode", "--target", "cnf", "--problem", "mts1", w.path("ex.bnet")}).code == 1);
}

TEST_CASE("delegated minimal trap space counting emits the encoding") {
    Workspace w;
    auto r = invoke({"count", "--problem", "mts1", "--mode", "approx", "--emit", w.path("mts.lp"), w.path("ex.bnet")});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(r.err.find("--external-count") != std::string::npos);
    CHECK(w.read("mts.lp").rfind("p_a ; n_a.\n", 0) == 0);

    auto ext = invoke({"count", "--problem", "mts3", "--perturb", w.path("x.txt"), "--external-count", "2",
                       w.path("ex.bnet")});
    REQUIRE(ext.code == 0);
    CHECK(json_of(ext)["provenance"] == "external");
    CHECK(json_of(ext)["robustness"] == "2/3");
}

TEST_CASE("verify subcommand") {
    Workspace w;
    CHECK(invoke({"verify", w.path("ex.bnet"), "--subspace", "0*"}).out ==
          "trap space: yes\nminimal: no\nfixed point: no\n");
    CHECK(invoke({"verify", w.path("ex.bnet"), "--subspace", "00"}).out ==
          "trap space: yes\nminimal: yes\nfixed point: yes\n");
    CHECK(invoke({"verify", w.path("ex.bnet"), "--subspace", "1*"}).out ==
          "trap space: no\nminimal: no\nfixed point: no\n");
    CHECK(invoke({"verify", w.path("ex.bnet"), "--subspace", "00", "--phenotype", w.path("beta.txt")}).out.find(
              "phenotype: satisfied") != std::string::npos);
}

TEST_CASE("exit codes") {
    Workspace w;
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"count", w.path("missing.bnet")}).code == 1);
    const auto broken = invoke({"count", w.path("broken.bnet")});
    CHECK(broken.code == 1);
    CHECK(broken.err.find("line 1") != std::string::npos);
    CHECK(invoke({"count", "--problem", "mts9", w.path("ex.bnet")}).code == 1);
    CHECK(invoke({"count", "--epsilon", "1.5", "--problem", "fix1", w.path("ex.bnet")}).code == 1);
    CHECK(invoke({"verify", w.path("ex.bnet"), "--subspace", "0"}).code == 1);
    CHECK(invoke({"count", "--problem", "mts1", "--mode", "exact", "--caps", "subspace=1", w.path("ex.bnet")}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}
