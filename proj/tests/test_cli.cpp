/* Drives the installed binary through popen and checks the documented
   exit codes and output shapes. */

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout only
};

std::string binary() {
    const char* env = std::getenv("IEPOLY_BIN");
    REQUIRE(env != nullptr);
    return env;
}

RunResult run(const std::string& args) {
    std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("coeff-at prints the plain coefficient") {
    RunResult r = run("coeff-at --p 3 --q 5 --r 7 --m 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "-2\n");
}

TEST_CASE("flat prints c and the set") {
    RunResult r = run("--no-cache flat --a 1 --b 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"c\":\"10\"") != std::string::npos);
    CHECK(r.output.find("[-1,0,1]") != std::string::npos);
}

TEST_CASE("thm3 full verification at a = 2") {
    RunResult r = run("--no-cache thm3 --p 3 --q 11 --r 2 --a 2 --full-verify");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"P\":\"9\"") != std::string::npos);
    CHECK(r.output.find("\"Q\":\"11\"") != std::string::npos);
    CHECK(r.output.find("\"R\":\"16384\"") != std::string::npos);
    CHECK(r.output.find("\"cardinality\":10") != std::string::npos);
    CHECK(r.output.find("\"diameter\":9") != std::string::npos);
}

TEST_CASE("exit code 2 on unknown flags and bad input") {
    CHECK(run("coeffs --p 3 --q 5 --r 7 --bogus 1").exit_code == 2);
    CHECK(run("coeff-at --p 3 --q 6 --r 7 --m 0").exit_code == 2); // not coprime
    CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("exit code 3 on informative negatives") {
    CHECK(run("lemma4 --p 5 --q 11 --r 2 --a 1 --epsilon 0.01").exit_code == 3);
    CHECK(run("--no-cache prop5 --p 3 --q 5 --r 7").exit_code == 3);
    CHECK(run("--no-cache thm3 --p 3 --q 7 --r 2 --a 1").exit_code == 3);
}

TEST_CASE("exit code 4 on resource caps") {
    CHECK(run("--no-cache --max-cells 100 coeffs --p 101 --q 103 --r 107").exit_code == 4);
}

TEST_CASE("construct then verify round-trip through files") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "iepoly_cli_test";
    fs::create_directories(dir);
    fs::path cert = dir / "cert.json";

    RunResult made = run("--no-cache thm3 --p 3 --q 11 --r 2 --a 2");
    REQUIRE(made.exit_code == 0);
    {
        std::ofstream out(cert);
        out << made.output;
    }
    RunResult verified = run("verify --file " + cert.string());
    CHECK(verified.exit_code == 0);
    CHECK(verified.output.find("\"ok\":true") != std::string::npos);

    // tamper
    std::string bad = made.output;
    auto pos = bad.find("\"c\":\"14\"");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 8, "\"c\":\"16\"");
    {
        std::ofstream out(cert);
        out << bad;
    }
    RunResult failed = run("verify --file " + cert.string());
    CHECK(failed.exit_code == 5);
    CHECK(failed.output.find("\"ok\":false") != std::string::npos);
}

TEST_CASE("deterministic output and cache replay") {
    namespace fs = std::filesystem;
    fs::path cache = fs::temp_directory_path() / "iepoly_cache_test";
    fs::remove_all(cache);
    std::string flags = "--cache-dir " + cache.string() + " ";

    RunResult first = run(flags + "set --p 3 --q 11 --r 16");
    RunResult second = run(flags + "set --p 3 --q 11 --r 16"); // served from cache
    RunResult fresh = run("--no-cache set --p 3 --q 11 --r 16");
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output == fresh.output);
    CHECK(fs::exists(cache));
}

TEST_CASE("manifest records the run and its digest") {
    namespace fs = std::filesystem;
    fs::path manifest = fs::temp_directory_path() / "iepoly_manifest.json";
    fs::remove(manifest);
    RunResult r = run("--no-cache --manifest " + manifest.string() +
                      " set --p 3 --q 5 --r 7");
    REQUIRE(r.exit_code == 0);
    std::ifstream in(manifest);
    REQUIRE(in.good());
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.find("\"command\": \"set\"") != std::string::npos);
    CHECK(body.find("output_fnv64") != std::string::npos);
}
