#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "olsub/entail.hpp"
#include "olsub/error.hpp"
#include "olsub/syntax.hpp"

namespace olsub {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("olsub_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(CliCheck, ExitCodes) {
  EXPECT_EQ(run({"check", "x & y <= x"}).code, cli::kProvable);
  EXPECT_EQ(run({"check", "x & y <= x"}).out, "provable\n");
  EXPECT_EQ(run({"check", "x <= y"}).code, cli::kNotProvable);
  EXPECT_EQ(run({"check", "x <= y"}).out, "not provable\n");
  EXPECT_EQ(run({"check", "x >= x & y"}).code, cli::kProvable);
  EXPECT_EQ(run({"check", "~(x | y) = ~x & ~y"}).code, cli::kProvable);
  EXPECT_EQ(run({"check", "x = x & y"}).code, cli::kNotProvable);
}

TEST(CliCheck, Errors) {
  const Result bad = run({"check", "x <="});
  EXPECT_EQ(bad.code, cli::kError);
  EXPECT_EQ(bad.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(run({"check", "F(x) <= x"}).code, cli::kError);
  EXPECT_EQ(run({"check", "--axioms", "/nonexistent/file.ax", "x <= x"}).code, cli::kError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kError);
  EXPECT_EQ(run({}).code, cli::kError);
}

TEST(CliCheck, AxiomFile) {
  const std::string path = write_temp("trans.ax", "# bounds\nA <= B\nB <= C\n");
  EXPECT_EQ(run({"check", "--axioms", path, "A <= C"}).code, cli::kProvable);
  EXPECT_EQ(run({"check", "--axioms", path, "C <= A"}).code, cli::kNotProvable);
}

TEST(CliCheck, DeclaredSymbols) {
  EXPECT_EQ(run({"check", "--fun", "Arrow : (-,+)", "Arrow(x | y, z) <= Arrow(x, z)"}).code,
            cli::kProvable);
  EXPECT_EQ(run({"check", "--fun", "Arrow : (-,+)", "Arrow(x, z) <= Arrow(x | y, z)"}).code,
            cli::kNotProvable);
}

TEST(CliCheck, DefinitionsAndInternals) {
  const std::string path =
      write_temp("defs.ax", "fun S : (+)\nfun T : (+)\ntype U[A] <: S(A) & T(S(A))\n");
  EXPECT_EQ(run({"check", "--axioms", path, "U(x) <= S(x)"}).code, cli::kProvable);
  EXPECT_EQ(run({"check", "--axioms", path, "S(x) <= U(x)"}).code, cli::kNotProvable);
  EXPECT_EQ(run({"check", "--axioms", path, "U(x) <= T(x)"}).code, cli::kNotProvable);

  const Result hidden = run({"explain", "--axioms", path, "U(x) <= S(x)"});
  EXPECT_EQ(hidden.code, cli::kProvable);
  EXPECT_EQ(hidden.out.find("U'"), std::string::npos);
  const Result shown = run({"explain", "--show-internals", "--axioms", path, "U(x) <= S(x)"});
  EXPECT_NE(shown.out.find("U'"), std::string::npos);
}

TEST(CliCheck, JsonSchema) {
  const Result r = run({"check", "--format", "json", "--proof", "x & y <= y & x"});
  ASSERT_EQ(r.code, cli::kProvable);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "provable");
  EXPECT_TRUE(j.at("stats").at("sequents").is_number_unsigned());
  EXPECT_TRUE(j.at("stats").at("clauses").is_number_unsigned());
  EXPECT_TRUE(j.at("stats").at("ms").is_number());
  const auto& proof = j.at("proof").at(0);
  const auto& nodes = proof.at("nodes");
  const auto& root = nodes.at(proof.at("root").get<std::size_t>());
  EXPECT_EQ(root.at("rule"), "RightAnd");
  EXPECT_EQ(root.at("conclusion").size(), 2u);
  for (const auto& n : nodes) {
    for (const auto& p : n.at("premises")) EXPECT_LT(p.get<std::size_t>(), nodes.size());
  }

  const Result no = run({"check", "--format", "json", "x <= y"});
  EXPECT_EQ(no.code, cli::kNotProvable);
  const auto k = nlohmann::json::parse(no.out);
  EXPECT_EQ(k.at("verdict"), "not provable");
  EXPECT_FALSE(k.contains("proof"));
}

TEST(CliCheck, JsonProofCitesAxioms) {
  const std::string path = write_temp("trans_json.ax", "A <= B\nB <= C\n");
  const Result r = run({"check", "--format", "json", "--proof", "--axioms", path, "A <= C"});
  ASSERT_EQ(r.code, cli::kProvable);
  const auto j = nlohmann::json::parse(r.out);
  bool cites = false;
  for (const auto& n : j.at("proof").at(0).at("nodes")) {
    if (n.at("rule") == "AxiomCut") cites = cites || n.contains("axiom");
  }
  EXPECT_TRUE(cites);
}

TEST(CliNormalize, Examples) {
  EXPECT_EQ(run({"normalize", "x | (x & y)"}).out, "x\n");
  EXPECT_EQ(run({"normalize", "x | ~x"}).out, "top\n");
  EXPECT_EQ(run({"normalize", "--mode", "bl", "x & (x | y)"}).out, "x\n");
  EXPECT_EQ(run({"normalize", "--fun", "Arrow : (-,+)", "~Arrow(x, y | y)"}).out,
            "~Arrow(x, y)\n");
  const Result neg = run({"normalize", "--mode", "bl", "~x | x"});
  EXPECT_EQ(neg.code, cli::kError);
  EXPECT_NE(neg.err.find("error:"), std::string::npos);
  const std::string path = write_temp("norm.ax", "A <= B\n");
  EXPECT_EQ(run({"normalize", "--axioms", path, "x"}).code, cli::kError);
  EXPECT_EQ(run({"normalize", "--mode", "xl", "x"}).code, cli::kError);
}

TEST(CliGen, SnTn) {
  EXPECT_EQ(run({"gen", "sn-tn", "2"}).out, "X1 | X2 <= X2 | X1\nX2 | X1 <= X1 | X2\n");
  const Result four = run({"gen", "sn-tn", "4"});
  EXPECT_EQ(four.code, cli::kProvable);
  EXPECT_EQ(four.out.substr(0, four.out.find('\n')),
            "(X1 | X2) & (X3 | X4) <= (X2 | X1) & (X4 | X3)");
  EXPECT_EQ(run({"gen", "sn-tn", "3"}).code, cli::kError);
  EXPECT_EQ(run({"gen", "sn-tn", "0"}).code, cli::kError);
  EXPECT_EQ(run({"gen", "other", "4"}).code, cli::kError);
}

TEST(CliGen, GeneratedLinesAreProvable) {
  for (std::size_t n : {2u, 4u, 6u, 10u}) {
    std::istringstream lines(cli::gen_sn_tn(n));
    std::string line;
    while (std::getline(lines, line)) EXPECT_EQ(run({"check", line}).code, cli::kProvable) << line;
  }
}

TEST(CliGen, RecurrenceIndices) {
  TermUniverse u;
  const auto st = cli::build_sn_tn(u, 6);
  // S_6 = S_4 & (X7 | X8): the recurrence skips X5 and X6.
  EXPECT_EQ(syntax::print_term(u, st.s), "(X1 | X2) & (X3 | X4) & (X7 | X8)");
  EXPECT_EQ(syntax::print_term(u, st.t), "(X2 | X1) & (X4 | X3) & (X8 | X7)");
  try {
    cli::build_sn_tn(u, 5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadN);
  }
}

TEST(CliBench, ReportsRowsAndSlopes) {
  const std::string csv = (std::filesystem::temp_directory_path() / "olsub_test_bench.csv").string();
  const Result r = run({"bench", "sn-tn", "8..16", "--csv", csv, "--threads", "2"});
  EXPECT_EQ(r.code, cli::kProvable);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,provable,sequents,clauses,wall_ms");
  std::vector<std::string> rows;
  while (std::getline(lines, line) && line[0] != '#') rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].rfind("8,true,", 0), 0u);
  EXPECT_EQ(rows[4].rfind("16,true,", 0), 0u);
  EXPECT_NE(r.out.find("# log-log slope clauses~n: "), std::string::npos);
  std::ifstream written(csv);
  std::getline(written, line);
  EXPECT_EQ(line, "n,provable,sequents,clauses,wall_ms");
  EXPECT_EQ(run({"bench", "sn-tn", "3"}).code, cli::kError);
}

TEST(CliBench, SmallQueryIsFast) {
  const auto rows = cli::bench_sn_tn({4});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].provable);
  EXPECT_LT(rows[0].milliseconds, 50.0);
}

TEST(CliHelpers, ParseNList) {
  EXPECT_EQ(cli::parse_n_list("8..14"), (std::vector<std::size_t>{8, 10, 12, 14}));
  EXPECT_EQ(cli::parse_n_list("4,8,16"), (std::vector<std::size_t>{4, 8, 16}));
  EXPECT_EQ(cli::parse_n_list("6"), (std::vector<std::size_t>{6}));
  EXPECT_THROW(cli::parse_n_list("8..x"), Error);
}

TEST(CliHelpers, LogLogSlope) {
  const std::vector<double> xs{1, 2, 4, 8};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3 * x * x);
  EXPECT_NEAR(cli::loglog_slope(xs, ys), 2.0, 1e-9);
}

}  // namespace
}  // namespace olsub
