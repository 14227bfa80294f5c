#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "olsub/term.hpp"

namespace olsub::cli {

enum Exit : int { kProvable = 0, kNotProvable = 1, kError = 2 };

struct SnTn {
  TermId s;
  TermId t;
};

/// S_2 = X1 | X2, S_{n+2} = S_n & (X_{2n-1} | X_{2n}); T swaps every pair.
/// Throws BadN unless n is even and >= 2.
SnTn build_sn_tn(TermUniverse& u, std::size_t n);

/// `S_n <= T_n` and `T_n <= S_n` as source lines.
std::string gen_sn_tn(std::size_t n);

struct BenchRow {
  std::size_t n = 0;
  bool provable = false;
  std::size_t sequents = 0;
  std::size_t clauses = 0;
  double milliseconds = 0.0;
};

/// Decides S_n = T_n for every n; rows come back in input order. Each worker
/// owns its universe, and each query stays single-threaded.
std::vector<BenchRow> bench_sn_tn(const std::vector<std::size_t>& ns, unsigned threads = 1);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Parses "8..32" (even values) or "4,8,16" into a list.
std::vector<std::size_t> parse_n_list(const std::string& text);

/// Runs one command line (without the program name). Exit codes: 0 provable
/// or success, 1 not provable, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace olsub::cli
