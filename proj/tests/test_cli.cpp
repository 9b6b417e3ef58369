#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "langdual/cli.hpp"
#include "langdual/json_io.hpp"

using namespace langdual;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("langdual_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("info") {
  const Run a1 = run({"info", "--type", "A1:sc"});
  REQUIRE(a1.code == kPass);
  const Json j = Json::parse(a1.out);
  CHECK(j["rank"] == 1);
  CHECK(j["roots"] == 2);
  CHECK(j["ade"] == true);
  CHECK(j["cartan"] == Json::parse("[[2]]"));
  CHECK(j["pi1"] == Json::array());

  const Json b3 = Json::parse(run({"info", "--type", "B3"}).out);
  CHECK(b3["ade"] == false);
  CHECK(b3["roots"] == 18);

  const Json t2 = Json::parse(run({"info", "--type", "T2"}).out);
  CHECK(t2["free_rank"] == 2);
  CHECK(t2["type"] == "T2");
}

TEST_CASE("dualize round trip is byte-exact") {
  const auto f1 = temp_file("d1.json"), f2 = temp_file("d2.json");
  for (const char* t : {"A1:sc", "B3:sc", "D4:adj", "G2", "A2xT1", "E6:adj"}) {
    CAPTURE(t);
    const Run src = run({"dualize", "--type", t});
    REQUIRE(src.code == kPass);
    const RootDatum original = canonical_order(build_from_dynkin(parse_descriptor(t)));
    {
      std::ofstream o(f1);
      o << datum_to_json(original).dump(2) << "\n";
    }
    REQUIRE(run({"dualize", "--input", f1.string(), "--out", f2.string()}).code == kPass);
    CHECK(slurp(f2) == src.out);
    const Run back = run({"dualize", "--input", f2.string()});
    REQUIRE(back.code == kPass);
    CHECK(back.out == slurp(f1));
  }
  std::filesystem::remove(f1);
  std::filesystem::remove(f2);
}

TEST_CASE("B3 dualizes to C3 with pi1 = Z/2") {
  const auto f = temp_file("b3dual.json");
  REQUIRE(run({"dualize", "--type", "B3:sc", "--out", f.string()}).code == kPass);
  const Json info = Json::parse(run({"info", "--input", f.string()}).out);
  CHECK(info["type"] == "C3 (adj)");
  CHECK(info["pi1"] == Json::parse("[2]"));
  std::filesystem::remove(f);
}

TEST_CASE("cartan and export-algebra") {
  const Json c = Json::parse(run({"cartan", "--type", "A2"}).out);
  CHECK(c["cartan"] == Json::parse("[[2,-1],[-1,2]]"));
  const Json e = Json::parse(run({"export-algebra", "--type", "A1"}).out);
  CHECK(e["dim"] == 3);
  CHECK(e["killing"][0][0] == "8");
}

TEST_CASE("verify exit codes") {
  const Run d4 = run({"verify", "--type", "D4:sc", "--no-timing"});
  CHECK(d4.code == kPass);
  const Json r = Json::parse(d4.out);
  CHECK(r["overall"] == true);
  CHECK(r["dual"]["type"] == "D4 (adj)");

  const Run b2 = run({"verify", "--type", "B2:sc"});
  CHECK(b2.code == kMathFailure);
  const Json rb = Json::parse(b2.out);
  CHECK(rb["aborted"] == true);
  CHECK(rb["checks"][0]["name"] == "ade_symmetry");
  CHECK(rb["checks"][0]["witness"].is_string());
  CHECK(b2.err.find("ade_symmetry") != std::string::npos);

  const Run scaled = run({"verify", "--type", "A1xT1", "--scale", "3", "--scale", "-2", "--no-timing"});
  CHECK(scaled.code == kPass);
  const Json rs = Json::parse(scaled.out);
  CHECK(rs["scaled_n"] == Json::parse("[3,-2]"));
  bool saw = false;
  for (const auto& ch : rs["checks"])
    if (ch["name"] == "flux_equation[n=-2]") saw = ch["pass"] == true;
  CHECK(saw);

  CHECK(run({"verify", "--type", "A1", "--scale", "0"}).code == kInputError);
  CHECK(run({"verify", "--type", "E7"}).code == kInputError);
  CHECK(run({"verify", "--type", "A2", "--max-rank-guard", "1"}).code == kInputError);
}

TEST_CASE("bad input exits 2") {
  CHECK(run({"info", "--type", "Q7"}).code == kInputError);
  CHECK(run({"info"}).code == kInputError);
  CHECK(run({"frobnicate"}).code == kInputError);
  CHECK(run({"info", "--input", "/nonexistent/file.json"}).code == kInputError);

  const auto f = temp_file("bad.json");
  {
    std::ofstream o(f);
    o << R"({"label": "bad", "rank": 1, "roots": [[1], [-1]], "coroots": [[1], [-1]]})";
  }
  const Run bad = run({"verify", "--input", f.string()});
  CHECK(bad.code == kInputError);
  CHECK(bad.err.find("invalid root datum") != std::string::npos);
  {
    std::ofstream o(f);
    o << "{ not json";
  }
  CHECK(run({"info", "--input", f.string()}).code == kInputError);
  std::filesystem::remove(f);
}

TEST_CASE("reports without timing are deterministic across job counts") {
  const Run a = run({"verify", "--type", "A3:adj", "--no-timing"});
  const Run b = run({"verify", "--type", "A3:adj", "--no-timing", "--jobs", "4"});
  CHECK(a.code == kPass);
  CHECK(a.out == b.out);
  CHECK(a.out.find("seconds") == std::string::npos);
}

TEST_CASE("A1 report names its dual") {
  const Json r = Json::parse(run({"verify", "--type", "A1:sc", "--no-timing"}).out);
  CHECK(r["overall"] == true);
  CHECK(r["dual"]["type"] == "A1 (adj)");
  CHECK(r["dual"]["fundamental_group"]["torsion"] == Json::parse("[2]"));
}

TEST_CASE("installed binary exit codes") {
  const std::string bin = LANGDUAL_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  CHECK(status("verify --type A1:sc") == 0);
  CHECK(status("verify --type B2:sc") == 1);
  CHECK(status("verify --type nonsense") == 2);
  CHECK(status("--help") == 0);
}
