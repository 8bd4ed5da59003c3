#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(FINTOPO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_scratch(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "fintopo-cli-tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

const char* kCircle =
    "element a\nelement b\nelement c\nelement d\n"
    "cover a < c\ncover a < d\ncover b < c\ncover b < d\n";

std::string circle_file() { return write_scratch("circle.poset", kCircle); }

std::string chain_file(int k) {
  std::string text;
  for (int i = 0; i < k; ++i) text += "element c" + std::to_string(i) + "\n";
  for (int i = 0; i + 1 < k; ++i)
    text += "cover c" + std::to_string(i) + " < c" + std::to_string(i + 1) + "\n";
  return write_scratch("chain" + std::to_string(k) + ".poset", text);
}

}  // namespace

TEST_CASE("cc subcommand prints the exact circle bracket") {
  auto res = run_cli("cc " + circle_file() + " --m-max 4");
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("cc: [4, 4] exact") != std::string::npos);
  REQUIRE(res.out.find("trace: m=0:inf m=1:inf m=2:inf m=3:inf m=4:4") != std::string::npos);
  REQUIRE(res.out.find("section-certificate") != std::string::npos);
}

TEST_CASE("structured cc output carries the trace and certificate") {
  auto res = run_cli("--format structured cc " + circle_file() + " --m-max 4");
  REQUIRE(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  REQUIRE(j["lower"] == 4);
  REQUIRE(j["upper"] == 4);
  REQUIRE(j["m_at_upper"] == 4);
  REQUIRE(j["exact"] == true);
  REQUIRE(j["trace"].size() == 5);
  REQUIRE(j["trace"][0].is_null());
  REQUIRE(j["trace"][4] == 4);
  REQUIRE(j["certificate"].is_string());
}

TEST_CASE("certificates written by cc verify and tampered copies fail") {
  auto cert_path = write_scratch("circle.cert", "");
  auto res = run_cli("cc " + circle_file() + " --m-max 4 --cert-out " + cert_path);
  REQUIRE(res.code == 0);

  auto ok = run_cli("verify " + cert_path + " " + circle_file());
  REQUIRE(ok.code == 0);
  REQUIRE(ok.out == "ok\n");

  std::ifstream in(cert_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto pos = text.find("-> [");
  REQUIRE(pos != std::string::npos);
  text.replace(pos + 4, 1, text[pos + 4] == 'a' ? "b" : "a");
  auto bad_path = write_scratch("circle-bad.cert", text);
  auto bad = run_cli("verify " + bad_path + " " + circle_file());
  REQUIRE(bad.code == 1);
  REQUIRE(bad.out.find("invalid:") != std::string::npos);
}

TEST_CASE("verify rejects a certificate against the wrong poset") {
  auto cert_path = write_scratch("circle2.cert", "");
  REQUIRE(run_cli("cc " + circle_file() + " --m-max 4 --cert-out " + cert_path).code == 0);
  auto res = run_cli("verify " + cert_path + " " + chain_file(3));
  REQUIRE(res.code == 1);
  REQUIRE(res.out.find("digest mismatch") != std::string::npos);
}

TEST_CASE("cat subcommand emits a verifiable certificate") {
  auto cert_path = write_scratch("circle.cat", "");
  auto res = run_cli("cat " + circle_file() + " --cert-out " + cert_path);
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("cat: 2") != std::string::npos);
  auto ver = run_cli("verify " + cert_path + " " + circle_file());
  REQUIRE(ver.code == 0);
}

TEST_CASE("core subcommand collapses a fence to a point") {
  auto fence = write_scratch("fence.poset", "element p\nelement q\nelement r\ncover p < q\ncover r < q\n");
  auto res = run_cli("--format structured core " + fence);
  REQUIRE(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  REQUIRE(j["removed"].size() == 2);
  REQUIRE(j["core"]["elements"].size() == 1);

  auto text = run_cli("core " + fence);
  REQUIRE(text.code == 0);
  REQUIRE(text.out.find("core:\nelement ") != std::string::npos);
}

TEST_CASE("complex subcommand exports facet lists") {
  auto res = run_cli("complex " + circle_file());
  REQUIRE(res.code == 0);
  REQUIRE(res.out == "a c\na d\nb c\nb d\n");

  auto structured = run_cli("complex " + circle_file() + " --export structured");
  REQUIRE(structured.code == 0);
  auto j = nlohmann::json::parse(structured.out);
  REQUIRE(j["vertices"].size() == 4);
  REQUIRE(j["facets"].size() == 4);

  REQUIRE(run_cli("complex " + circle_file() + " --export obj").code == 2);
}

TEST_CASE("report output is deterministic and timing free") {
  auto a = run_cli("--format structured report " + circle_file() + " --m-max 4");
  auto b = run_cli("--format structured report " + circle_file() + " --m-max 4");
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  REQUIRE(j["cc"]["lower"] == 4);
  REQUIRE(j["inequalities"]["chain_holds"] == true);
  REQUIRE(j["inequalities"]["z_bound_holds"] == true);
  REQUIRE(j["certificates"]["cat_verified"] == true);
  REQUIRE(j["certificates"]["cc_verified"] == true);

  auto t1 = run_cli("report " + circle_file() + " --m-max 4");
  auto t2 = run_cli("report " + circle_file() + " --m-max 4");
  REQUIRE(t1.code == 0);
  REQUIRE(t1.out == t2.out);
  REQUIRE(t1.out.find("timing") == std::string::npos);
}

TEST_CASE("threads flag does not change the report") {
  auto one = run_cli("--threads 1 --format structured report " + circle_file());
  auto four = run_cli("--threads 4 --format structured report " + circle_file());
  REQUIRE(one.code == 0);
  REQUIRE(one.out == four.out);
}

TEST_CASE("parse failures exit with code two") {
  REQUIRE(run_cli("cc /nonexistent.poset").code == 2);
  auto bad = write_scratch("bad.poset", "element a\nbogus\n");
  REQUIRE(run_cli("cc " + bad).code == 2);
  auto cycle = write_scratch("cycle.poset", "element a\nelement b\ncover a < b\ncover b < a\n");
  REQUIRE(run_cli("report " + cycle).code == 2);
}

TEST_CASE("size limits exit with code three") {
  REQUIRE(run_cli("--limit 100 complex " + chain_file(12)).code == 3);
  REQUIRE(run_cli("--limit 100 complex " + chain_file(5)).code == 0);
}

TEST_CASE("disconnected inputs are rejected for sections but reported") {
  auto anti = write_scratch("anti.poset", "element a\nelement b\n");
  REQUIRE(run_cli("cc " + anti).code == 1);
  REQUIRE(run_cli("cat " + anti).code == 1);
  auto rep = run_cli("report " + anti);
  REQUIRE(rep.code == 0);
  REQUIRE(rep.out.find("path-connected: no") != std::string::npos);
  REQUIRE(rep.out.find("cc: undefined") != std::string::npos);
}

TEST_CASE("paper-suite passes") {
  auto res = run_cli("paper-suite");
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("all checks passed") != std::string::npos);
  REQUIRE(res.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage errors are nonzero") {
  REQUIRE(run_cli("").code != 0);
  REQUIRE(run_cli("--format yaml paper-suite").code != 0);
  REQUIRE(run_cli("frobnicate x").code != 0);
}
