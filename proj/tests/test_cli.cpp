#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <unistd.h>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    char out_file[] = "/tmp/vhs_cli_out_XXXXXX";
    int fd = mkstemp(out_file);
    REQUIRE(fd >= 0);
    close(fd);
    std::string cmd = std::string(VHS_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::remove(out_file);
    return {WEXITSTATUS(rc), text};
}

std::string write_model(const std::string& name, const std::string& body) {
    std::string path = "/tmp/vhs_cli_test_" + name + ".json";
    std::ofstream out(path);
    out << body;
    return path;
}

const char* kLineModel = R"({
  "schema_version": 1,
  "kind": "cy3",
  "N": 1,
  "yukawa": [{"indices": [1, 1, 1], "value": [1, 2]}]
})";

const char* kHkModel = R"({
  "schema_version": 1,
  "kind": "hyperkahler",
  "N": 2,
  "n": 2
})";

}  // namespace

TEST_CASE("family expansion of a one-parameter model") {
    std::string path = write_model("line", kLineModel);
    RunResult r = run_cli("expand-family " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("classic") != std::string::npos);
}

TEST_CASE("asymmetric coupling tensors are rejected at load time") {
    std::string path = write_model("bad", R"({
      "schema_version": 1,
      "kind": "cy3",
      "N": 2,
      "yukawa": [{"indices": [1, 1, 2], "value": 1},
                 {"indices": [2, 1, 1], "value": 3}]
    })");
    RunResult r = run_cli("expand-family " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("unknown schema versions are refused") {
    std::string path = write_model("schema", R"({"schema_version": 7, "kind": "cy3",
      "N": 1, "yukawa": []})");
    RunResult r = run_cli("curvature " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("schema") != std::string::npos);
}

TEST_CASE("json reports are bit-identical across runs in rational mode") {
    std::string path = write_model("line", kLineModel);
    RunResult a = run_cli("yukawa " + path + " --format json");
    RunResult b = run_cli("yukawa " + path + " --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"verdicts\"") != std::string::npos);
    CHECK(a.output.find("\"conventions\"") != std::string::npos);
}

TEST_CASE("strict mode signals failing verdicts through the exit code") {
    std::string path = write_model("corr", R"({
      "schema_version": 1,
      "kind": "cy3",
      "N": 1,
      "yukawa": [{"indices": [1, 1, 1], "value": [1, 2]}],
      "extra_coeffs": [{"index": [2], "vector": [0, 0, [1, 3], 0]}]
    })");
    RunResult relaxed = run_cli("check-symmetric " + path);
    CHECK(relaxed.exit_code == 0);
    CHECK(relaxed.output.find("not_symmetric") != std::string::npos);
    RunResult strict = run_cli("check-symmetric " + path + " --strict");
    CHECK(strict.exit_code == 3);
}

TEST_CASE("hyperkahler domain walk") {
    std::string path = write_model("hk", kHkModel);
    RunResult r = run_cli("hk-domain " + path + " --points \"1/4,1/8;1/2,0\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("in_D") != std::string::npos);
    RunResult c = run_cli("hk-coincidence " + path + " --points \"1/4,1/8\" --format json");
    CHECK(c.exit_code == 0);
    CHECK(c.output.find("residual") != std::string::npos);
}

TEST_CASE("random point generation is reproducible under a fixed seed") {
    std::string path = write_model("line", kLineModel);
    RunResult a = run_cli("curvature " + path + " --points random:2 --seed 11 --format json");
    RunResult b = run_cli("curvature " + path + " --points random:2 --seed 11 --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}
