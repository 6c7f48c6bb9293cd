#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("qzeta");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = qzeta::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("dual subcommand") {
    CliResult r = run_cli({"dual", "2,1"});
    CHECK(r.code == 0);
    CHECK(r.out == "3\n");
    CHECK(run_cli({"dual", "2,1,1,1"}).out == "5\n");
    CHECK(run_cli({"dual", "1,2"}).code == 2);
}

TEST_CASE("eval subcommand emits the fixed JSON schema") {
    CliResult r = run_cli({"eval", "2", "--q", "0.5"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["value"].get<double>() == doctest::Approx(0.68601).epsilon(1e-4));
    CHECK(doc["certified"] == true);
    CHECK(doc["remainder_bound"].get<double>() < 1e-9);
    CHECK(doc["terms_used"].is_number_integer());
}

TEST_CASE("eval variants and usage errors") {
    CHECK(run_cli({"eval", "2,1", "--q", "0.5", "--tail", "1"}).code == 0);
    CHECK(run_cli({"eval", "2,1", "--q", "0.5", "--r", "2"}).code == 0);
    CHECK(run_cli({"eval", "2", "--q", "0.5", "--r", "1", "--tail", "1"}).code == 2);
    CHECK(run_cli({"eval", "1,2", "--q", "0.5"}).code == 2);
    CHECK(run_cli({"eval", "2", "--q", "1.5"}).code == 2);
    CHECK(run_cli({"eval", "2"}).code == 2);           // missing --q
    CHECK(run_cli({"nonsense"}).code == 2);            // unknown subcommand
    CHECK(run_cli({}).code == 2);                      // no subcommand
    CHECK(run_cli({"eval", "2", "--q", "0.5", "--format", "csv"}).code == 2);
    CHECK(run_cli({"eval", "2", "--q", "0.5", "--bogus"}).code == 2);
}

TEST_CASE("mzv subcommand") {
    CliResult r = run_cli({"mzv", "3", "--max-terms", "200000"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["value"].get<double>() == doctest::Approx(1.2020569).epsilon(1e-6));

    CliResult dt = run_cli({"mzv", "2", "--p", "1", "--n", "0", "--max-terms", "200000"});
    REQUIRE(dt.code == 0);
    CHECK(nlohmann::json::parse(dt.out)["value"].get<double>() ==
          doctest::Approx(0.6449341).epsilon(1e-5));
    CHECK(run_cli({"mzv", "2", "--p", "1"}).code == 2);  // --p without --n
}

TEST_CASE("norm subcommand") {
    CliResult r = run_cli({"norm", "2,1", "--grid-count", "9", "--grid-refine", "1",
                           "--max-terms", "500000"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["closed_form"].get<double>() == doctest::Approx(1.2020569).epsilon(1e-6));
    CHECK(doc["grid_max"].get<double>() < doc["closed_form"].get<double>() + 1e-6);

    CliResult tail = run_cli({"norm", "2", "--tail", "1", "--grid-count", "5",
                              "--grid-refine", "0"});
    REQUIRE(tail.code == 0);
    CHECK(nlohmann::json::parse(tail.out)["closed_form"].is_null());
}

TEST_CASE("verify subcommand exit codes") {
    CliResult pass = run_cli({"verify", "--suite", "monotone"});
    CHECK(pass.code == 0);

    CliResult duality = run_cli({"verify", "--suite", "duality", "--max-weight", "3",
                                 "--grid-count", "5", "--grid-refine", "0",
                                 "--max-terms", "300000"});
    CHECK(duality.code == 0);
    auto doc = nlohmann::json::parse(duality.out);
    REQUIRE(doc.is_array());
    for (const auto& report : doc) CHECK(report["all_passed"] == true);

    // a tiny cutoff cap leaves huge certified remainders, so the strict order
    // checks cannot clear their margins: exit must flip to 1
    CliResult fail = run_cli({"verify", "--suite", "order", "--max-terms", "5",
                              "--max-weight", "3", "--grid-count", "3",
                              "--grid-refine", "0"});
    CHECK(fail.code == 1);

    CHECK(run_cli({"verify", "--suite", "unknown"}).code == 2);
}

TEST_CASE("converge subcommand formats") {
    std::vector<std::string> base = {"converge", "--family", "V1", "--n-max", "3",
                                     "--grid-count", "5", "--grid-refine", "0"};
    CliResult json = run_cli(base);
    REQUIRE(json.code == 0);
    auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["records"].size() == 3);

    auto csv_args = base;
    csv_args.push_back("--format");
    csv_args.push_back("csv");
    CliResult csv = run_cli(csv_args);
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("n,distance,analytic_bound,probe_value,grid_max\n", 0) == 0);

    CHECK(run_cli({"converge", "--family", "T1", "--n-max", "2"}).code == 2);  // no --k
    CHECK(run_cli({"converge", "--family", "X9"}).code == 2);
}

TEST_CASE("byte-identical output regardless of parallelism") {
    std::vector<std::string> base = {"converge", "--family", "T2", "--r", "1",
                                     "--n-max",   "3",        "--grid-count", "9",
                                     "--grid-refine", "1"};
    auto one = base;
    one.push_back("--threads");
    one.push_back("1");
    auto four = base;
    four.push_back("--threads");
    four.push_back("4");
    CliResult a = run_cli(one);
    CliResult b = run_cli(four);
    CliResult c = run_cli(four);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
}

TEST_CASE("environment config is honored and flags take precedence") {
    const char* path = "/tmp/qzeta_test_config.json";
    {
        std::ofstream f(path);
        f << "{\"format\":\"text\",\"max_terms\":50000}";
    }
    setenv("QZETA_CONFIG", path, 1);
    CliResult text = run_cli({"eval", "2", "--q", "0.5"});
    CHECK(text.code == 0);
    CHECK(text.out.find("value            =") != std::string::npos);

    CliResult json = run_cli({"eval", "2", "--q", "0.5", "--format", "json"});
    CHECK(json.code == 0);
    CHECK(nlohmann::json::parse(json.out)["certified"] == true);

    setenv("QZETA_CONFIG", "/tmp/does_not_exist_qzeta.json", 1);
    CHECK(run_cli({"eval", "2", "--q", "0.5"}).code == 2);

    unsetenv("QZETA_CONFIG");
    std::remove(path);
}
