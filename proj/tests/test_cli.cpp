#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = buildvol::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> strings(const json& a) {
  std::vector<std::string> v;
  for (const auto& x : a) v.push_back(x.get<std::string>());
  return v;
}

const json& census_at(const json& doc, int radius) {
  for (const auto& row : doc["censuses"])
    if (row["R"] == radius) return row;
  throw std::runtime_error("no census row");
}

}  // namespace

TEST_CASE("roots") {
  auto a2 = invoke({"roots", "--type", "A2"});
  REQUIRE(a2.code == 0);
  CHECK(a2.doc()["exponents"] == json::array({1, 2}));
  CHECK(a2.doc()["weyl_order"] == "6");
  CHECK(strings(a2.doc()["poincare"]) == std::vector<std::string>{"1", "2", "2", "1"});

  auto a1 = invoke({"roots", "--type", "A1"});
  REQUIRE(a1.code == 0);
  CHECK(strings(a1.doc()["poincare"]) == std::vector<std::string>{"1", "1"});

  auto csv = invoke({"roots", "--type", "G2", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);

  CHECK(invoke({"roots", "--type", "D2"}).code == 3);
  CHECK(invoke({"roots", "--type", "A0"}).code == 3);
  CHECK(invoke({"roots", "--type", "Q3"}).code == 2);
  CHECK(invoke({"roots"}).code == 2);
}

TEST_CASE("weyl") {
  auto a1 = invoke({"weyl", "--type", "A1", "--lmax", "5"});
  REQUIRE(a1.code == 0);
  CHECK(strings(a1.doc()["counts"]) == std::vector<std::string>{"1", "2", "2", "2", "2", "2"});

  auto a2 = invoke({"weyl", "--type", "A2", "--lmax", "5"});
  REQUIRE(a2.code == 0);
  CHECK(strings(a2.doc()["counts"]) == std::vector<std::string>{"1", "3", "6", "9", "12", "15"});
  CHECK(a2.doc()["lmax"] == 5);
  CHECK(a2.doc()["type"] == "A2");

  auto zero = invoke({"weyl", "--type", "A2", "--lmax", "0"});
  REQUIRE(zero.code == 0);
  CHECK(strings(zero.doc()["counts"]) == std::vector<std::string>{"1"});
  CHECK_FALSE(zero.doc().contains("band"));

  auto csv = invoke({"weyl", "--type", "A1", "--lmax", "2", "--format", "csv"});
  CHECK(csv.out == "length,count\n0,1\n1,2\n2,2\n");

  auto words = invoke({"weyl", "--type", "A1", "--lmax", "3", "--words"});
  CHECK(strings(words.doc()["reduced_words"]) ==
        std::vector<std::string>{"", "0", "1", "01", "10", "010", "101"});

  CHECK(invoke({"weyl", "--type", "A2", "--lmax", "4", "--norm", "bogus"}).code == 2);
  CHECK(invoke({"weyl", "--type", "E8", "--lmax", "20", "--budget", "1000"}).code == 5);
  CHECK(invoke({"weyl", "--type", "A2", "--lmax", "3", "--format", "dot"}).code == 2);
}

TEST_CASE("series") {
  auto r = invoke({"series", "--type", "A2", "--lmax", "4", "--q", "2"});
  REQUIRE(r.code == 0);
  CHECK(strings(r.doc()["coeffs"]) == std::vector<std::string>{"1", "3", "6", "9", "12"});
  // S(2, R) = 1 + 3((R-1) 2^(R+1) + 2) at R = 3.
  CHECK(r.doc()["S"][3] == "103");
}

TEST_CASE("tree") {
  auto r = invoke({"tree", "--q", "2", "--e", "2", "--f", "1", "--radius", "6"});
  REQUIRE(r.code == 0);
  CHECK(census_at(r.doc(), 6)["in_F"] == "22");

  auto origin = invoke({"tree", "--q", "2", "--e", "1", "--f", "1", "--radius", "0"});
  REQUIRE(origin.code == 0);
  CHECK(census_at(origin.doc(), 0)["in_F"] == "1");
  CHECK(census_at(origin.doc(), 0)["total"] == "1");

  auto unram = invoke({"tree", "--q", "3", "--e", "1", "--f", "2", "--radius", "4", "--expand"});
  REQUIRE(unram.code == 0);
  CHECK(unram.doc()["interior_degree"] == 10);
  CHECK(unram.doc()["regular"] == true);
  CHECK(census_at(unram.doc(), 4)["total"] == "8201");  // 1 + 10 (9^4 - 1) / 8

  auto dot = invoke({"tree", "--q", "2", "--e", "2", "--f", "1", "--radius", "2", "--format", "dot"});
  REQUIRE(dot.code == 0);
  CHECK(dot.out.rfind("graph", 0) == 0);
  CHECK(invoke({"tree", "--q", "2", "--radius", "7", "--format", "dot"}).code == 3);

  CHECK(invoke({"tree", "--q", "1", "--radius", "3"}).code == 3);
  CHECK(invoke({"tree", "--q", "3", "--f", "2", "--radius", "8", "--expand", "--budget", "100"}).code == 5);
}

TEST_CASE("verify") {
  auto tree = invoke({"verify", "--target", "tree", "--q", "2", "--e", "2", "--f", "2", "--radius", "40"});
  REQUIRE(tree.code == 0);
  const json t = tree.doc();
  CHECK(t["defect1"].get<double>() < 0.02 * t["h_FF"].get<double>());
  CHECK(t["defect2"].get<double>() < 0.02 * t["h_FF"].get<double>());
  CHECK(t["n"] == 4);
  CHECK(t["samples"].size() == 40);
  CHECK(t["samples"][0]["volume_digits"].is_string());

  auto weyl = invoke({"verify", "--target", "weyl:A2", "--q", "2", "--e", "3", "--f", "2", "--lmax", "200"});
  REQUIRE(weyl.code == 0);
  const json w = weyl.doc();
  CHECK(w["defect1"].get<double>() < 0.02 * w["h_FF"].get<double>());
  CHECK(w["defect2"].get<double>() < 0.02 * w["h_FF"].get<double>());

  auto trivial = invoke({"verify", "--target", "tree", "--q", "2", "--e", "1", "--f", "1", "--radius", "20"});
  REQUIRE(trivial.code == 0);
  CHECK(trivial.doc()["defect1"] == 0.0);
  CHECK(trivial.doc()["defect2"] == 0.0);

  // A coarse window cannot meet an absurdly tight tolerance.
  CHECK(invoke({"verify", "--target", "weyl:A2", "--q", "2", "--e", "2", "--f", "2", "--lmax", "12", "--tolerance",
                "1e-9"})
            .code == 4);
  CHECK(invoke({"verify", "--target", "tree", "--radius", "5"}).code == 3);
  CHECK(invoke({"verify", "--target", "weyl:Z9", "--radius", "20"}).code == 2);
}

TEST_CASE("deterministic output and --out") {
  const std::vector<std::string> args{"verify", "--target", "weyl:C2", "--q", "3", "--e", "2", "--f", "1", "--radius",
                                      "30"};
  CHECK(invoke(args).out == invoke(args).out);

  const std::string path = "test_cli_out.json";
  auto r = invoke({"weyl", "--type", "G2", "--lmax", "6", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == invoke({"weyl", "--type", "G2", "--lmax", "6"}).out);
  std::remove(path.c_str());
}
