// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fewbody.h"
#include "json.hpp"

namespace {

const char* kHydrogen = R"({
  "problem": "two_body",
  "phys": {"potentials": [{"type": "expr", "expr": "-1/r"}]},
  "num": {"nmax": 16, "r1": 0.05, "rnmax": 40.0}
})";

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

int run_cli(const std::string& args) {
    const int raw = std::system(("../tools/fewbody " + args + " >/dev/null 2>&1").c_str());
    REQUIRE(raw != -1);
    return WEXITSTATUS(raw);
}

} // namespace

TEST_CASE("solve through the C API") {
    fbt_result* res = fbt_run_json(kHydrogen);
    REQUIRE(res != nullptr);
    CHECK(fbt_last_error_code() == 0);
    REQUIRE(fbt_result_count(res) >= 2);
    CHECK(std::abs(fbt_result_energy(res, 0) + 0.5) < 1e-4);

    const char* json = fbt_result_report(res, "json");
    REQUIRE(json != nullptr);
    const auto j = nlohmann::json::parse(json);
    CHECK(j.at("problem") == "two_body");

    const char* csv = fbt_result_report(res, "csv");
    REQUIRE(csv != nullptr);
    CHECK(std::string(csv).rfind("state,energy", 0) == 0);

    const std::string path = "capi_report.csv";
    CHECK(fbt_result_write(res, "csv", path.c_str()) == 0);
    std::ifstream in(path);
    CHECK(in.good());
    std::remove(path.c_str());

    fbt_result_free(res);
}

TEST_CASE("error reporting through the C API") {
    // invalid input -> code 2
    CHECK(fbt_run_json("{ not json") == nullptr);
    CHECK(fbt_last_error_code() == 2);
    CHECK(std::string(fbt_last_error()).size() > 0);

    CHECK(fbt_run_json(R"({"problem":"two_body","phys":{"potentials":[]},"num":{"nmax":4,"r1":0.1,"rnmax":10}})") ==
          nullptr);
    CHECK(fbt_last_error_code() == 2);

    CHECK(fbt_run_json(nullptr) == nullptr);
    CHECK(fbt_last_error_code() == 2);

    // out-of-range state index on a valid handle
    fbt_result* res = fbt_run_json(kHydrogen);
    REQUIRE(res != nullptr);
    const double bad = fbt_result_energy(res, 100000);
    CHECK(std::isnan(bad));
    CHECK(fbt_last_error_code() == 2);
    // a successful call clears the error state
    (void)fbt_result_energy(res, 0);
    CHECK(fbt_last_error_code() == 0);
    fbt_result_free(res);
}

TEST_CASE("bench through the C API") {
    const int list[] = {4, 8, 12};
    fbt_result* res = fbt_bench_json(kHydrogen, list, 3);
    REQUIRE(res != nullptr);
    CHECK(fbt_result_count(res) == 3);
    // variational monotonicity of the sweep
    CHECK(fbt_result_energy(res, 1) <= fbt_result_energy(res, 0) + 1e-12);
    CHECK(fbt_result_energy(res, 2) <= fbt_result_energy(res, 1) + 1e-12);

    const char* csv = fbt_result_report(res, "csv");
    REQUIRE(csv != nullptr);
    CHECK(std::string(csv).rfind("nmax,basis_dim,wall_time_ms,lowest", 0) == 0);

    CHECK(fbt_bench_json(kHydrogen, nullptr, 0) == nullptr);
    CHECK(fbt_last_error_code() == 2);
    fbt_result_free(res);
}

TEST_CASE("command-line interface exit codes") {
    write_file("cli_ok.json", kHydrogen);
    write_file("cli_bad.json", "{ not json");
    write_file("cli_invalid.json",
               R"({"problem":"two_body","phys":{"potentials":[]},"num":{"nmax":4,"r1":0.1,"rnmax":10}})");

    CHECK(run_cli("solve cli_ok.json") == 0);
    CHECK(run_cli("solve cli_ok.json --format csv --out cli_out.csv") == 0);
    std::ifstream out("cli_out.csv");
    std::string header;
    REQUIRE(std::getline(out, header));
    CHECK(header == "state,energy");

    CHECK(run_cli("bench cli_ok.json --nmax-list 4,6") == 0);

    CHECK(run_cli("solve cli_bad.json") == 2);
    CHECK(run_cli("solve cli_invalid.json") == 2);
    CHECK(run_cli("solve cli_missing.json") == 2);
    CHECK(run_cli("") == 2);                                 // missing subcommand
    CHECK(run_cli("bench cli_ok.json --nmax-list x,y") == 2);
    CHECK(run_cli("solve cli_ok.json --format yaml") == 2);

    std::remove("cli_ok.json");
    std::remove("cli_bad.json");
    std::remove("cli_invalid.json");
    std::remove("cli_out.csv");
}
