#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "olsub/defs.hpp"
#include "olsub/entail.hpp"
#include "olsub/error.hpp"
#include "olsub/normalize.hpp"
#include "olsub/syntax.hpp"

namespace olsub::cli {

namespace {

using nlohmann::json;

std::string x(std::size_t i) { return "X" + std::to_string(i); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json proof_json(const TermUniverse& u, const entail::ProofTree& root, bool show_internals) {
  json nodes = json::array();
  std::unordered_map<const entail::ProofNode*, std::size_t> ids;
  std::vector<const entail::ProofNode*> order;
  std::vector<const entail::ProofNode*> stack{root.get()};
  while (!stack.empty()) {
    const entail::ProofNode* n = stack.back();
    stack.pop_back();
    if (ids.contains(n)) continue;
    ids.emplace(n, order.size());
    order.push_back(n);
    for (auto it = n->premises.rbegin(); it != n->premises.rend(); ++it) stack.push_back(it->get());
  }
  auto side = [&](entail::AnnotatedTerm a) {
    return json{{"term", syntax::print_term(u, a.term, {show_internals})},
                {"side", a.side == entail::Side::L ? "L" : "R"}};
  };
  for (const entail::ProofNode* n : order) {
    json premises = json::array();
    for (const auto& p : n->premises) premises.push_back(ids.at(p.get()));
    json node{{"id", ids.at(n)},
              {"rule", std::string(entail::to_string(n->rule))},
              {"conclusion", json::array({side(n->conclusion.first()), side(n->conclusion.second())})},
              {"premises", premises}};
    if (n->axiom) {
      node["axiom"] = syntax::print_term(u, n->axiom->lhs, {show_internals}) + " <= " +
                      syntax::print_term(u, n->axiom->rhs, {show_internals});
    }
    nodes.push_back(std::move(node));
  }
  return json{{"root", 0}, {"nodes", nodes}};
}

struct CheckOptions {
  std::string axioms_path;
  std::vector<std::string> funs;
  bool proof = false;
  std::string format = "text";
  bool show_internals = false;
  std::string query;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  TermUniverse u;
  for (const std::string& f : o.funs) syntax::parse_declaration(f, u);
  syntax::SourceFile src;
  if (!o.axioms_path.empty()) src = syntax::parse_source(read_file(o.axioms_path), u);
  const syntax::Query q = syntax::parse_query(o.query, u);

  TermId lhs = q.lhs;
  TermId rhs = q.rhs;
  if (q.relation == syntax::Relation::Geq) std::swap(lhs, rhs);
  AxiomSet axioms = src.axioms;
  if (!src.definitions.empty()) {
    const defs::Desugared d = defs::desugar(u, src.definitions, lhs, rhs, axioms);
    lhs = d.lhs;
    rhs = d.rhs;
    axioms = d.axioms;
  }

  entail::Engine engine(u, axioms);
  std::vector<entail::Sequent> goals{entail::Sequent::leq(lhs, rhs)};
  if (q.relation == syntax::Relation::Eq) goals.push_back(entail::Sequent::leq(rhs, lhs));
  bool provable = true;
  for (entail::Sequent g : goals) provable = engine.prove(g) && provable;
  const entail::Stats stats = engine.stats();
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::vector<entail::ProofTree> proofs;
  if (provable && o.proof) {
    for (entail::Sequent g : goals) proofs.push_back(engine.proof(g));
  }

  if (o.format == "json") {
    json j{{"verdict", provable ? "provable" : "not provable"},
           {"stats", {{"sequents", stats.sequents}, {"clauses", stats.clauses}, {"ms", ms}}}};
    if (o.proof && provable) {
      json ps = json::array();
      for (const auto& p : proofs) ps.push_back(proof_json(u, p, o.show_internals));
      j["proof"] = ps;
    }
    out << j.dump(2) << "\n";
  } else {
    out << (provable ? "provable" : "not provable") << "\n";
    for (const auto& p : proofs) out << entail::format_proof(u, p, o.show_internals);
  }
  return provable ? kProvable : kNotProvable;
}

struct NormalizeOptions {
  std::string mode = "ol";
  std::string axioms_path;
  std::vector<std::string> funs;
  bool show_internals = false;
  std::string term;
};

int cmd_normalize(const NormalizeOptions& o, std::ostream& out) {
  if (!o.axioms_path.empty()) {
    throw Error(ErrorCode::AxiomsNotSupported, "normal forms are defined for the axiom-free theory only");
  }
  TermUniverse u;
  for (const std::string& f : o.funs) syntax::parse_declaration(f, u);
  const TermId t = syntax::parse_term(o.term, u);
  normalize::Normalizer n(u);
  const TermId nf = o.mode == "bl" ? n.normalize_bl(t) : n.normalize_ol(t);
  out << syntax::print_term(u, nf, {o.show_internals}) << "\n";
  return kProvable;
}

int cmd_gen(const std::string& family, std::size_t n, std::ostream& out) {
  if (family != "sn-tn") throw Error(ErrorCode::BadN, "unknown family '" + family + "'");
  out << gen_sn_tn(n);
  return kProvable;
}

int cmd_bench(const std::string& family, const std::string& ns_text, const std::string& csv_path,
              unsigned threads, std::ostream& out) {
  if (family != "sn-tn") throw Error(ErrorCode::BadN, "unknown family '" + family + "'");
  const std::vector<std::size_t> ns = parse_n_list(ns_text);
  TermUniverse probe;
  for (std::size_t n : ns) build_sn_tn(probe, n);
  const std::vector<BenchRow> rows = bench_sn_tn(ns, threads);

  std::ostringstream csv;
  csv << "n,provable,sequents,clauses,wall_ms\n";
  std::vector<double> xs, clauses, times;
  bool all = true;
  for (const BenchRow& r : rows) {
    csv << r.n << "," << (r.provable ? "true" : "false") << "," << r.sequents << "," << r.clauses
        << "," << std::fixed << std::setprecision(3) << r.milliseconds << "\n";
    xs.push_back(static_cast<double>(r.n));
    clauses.push_back(static_cast<double>(r.clauses));
    times.push_back(std::max(r.milliseconds, 1e-3));
    all = all && r.provable;
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw std::runtime_error("cannot write '" + csv_path + "'");
    f << csv.str();
  }
  out << csv.str();
  if (rows.size() >= 2) {
    out << std::fixed << std::setprecision(3) << "# log-log slope clauses~n: "
        << loglog_slope(xs, clauses) << "\n"
        << "# log-log slope wall_ms~n: " << loglog_slope(xs, times) << "\n";
  }
  return all ? kProvable : kNotProvable;
}

void add_check_options(CLI::App* cmd, CheckOptions& o) {
  cmd->add_option("--axioms", o.axioms_path, "Source file with declarations, axioms and definitions");
  cmd->add_option("--fun", o.funs, "Symbol declaration, e.g. 'Arrow : (-,+)'");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--show-internals", o.show_internals, "Print fresh definition symbols as such");
  cmd->add_option("query", o.query, "Query 'S <= T', 'S >= T' or 'S = T'")->required();
}

}  // namespace

SnTn build_sn_tn(TermUniverse& u, std::size_t n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::BadN, "n must be even and >= 2, got " + std::to_string(n));
  TermId s = u.join(u.var(x(1)), u.var(x(2)));
  TermId t = u.join(u.var(x(2)), u.var(x(1)));
  for (std::size_t k = 2; k < n; k += 2) {
    s = u.meet(s, u.join(u.var(x(2 * k - 1)), u.var(x(2 * k))));
    t = u.meet(t, u.join(u.var(x(2 * k)), u.var(x(2 * k - 1))));
  }
  return {s, t};
}

std::string gen_sn_tn(std::size_t n) {
  TermUniverse u;
  const SnTn st = build_sn_tn(u, n);
  const std::string s = syntax::print_term(u, st.s);
  const std::string t = syntax::print_term(u, st.t);
  return s + " <= " + t + "\n" + t + " <= " + s + "\n";
}

std::vector<BenchRow> bench_sn_tn(const std::vector<std::size_t>& ns, unsigned threads) {
  std::vector<BenchRow> rows(ns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ns.size(); i = next++) {
      TermUniverse u;
      const SnTn st = build_sn_tn(u, ns[i]);
      const auto start = std::chrono::steady_clock::now();
      entail::Engine e(u);
      const bool ok = e.leq(st.s, st.t) && e.leq(st.t, st.s);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      const entail::Stats s = e.stats();
      rows[i] = {ns[i], ok, s.sequents, s.clauses, ms};
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ns.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = std::min(xs.size(), ys.size());
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(s, &pos);
    if (pos != s.size()) throw Error(ErrorCode::BadN, "not a number: '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const std::size_t lo = number(text.substr(0, dots));
      const std::size_t hi = number(text.substr(dots + 2));
      for (std::size_t n = lo + (lo % 2); n <= hi; n += 2) out.push_back(n);
    } else {
      std::stringstream ss(text);
      for (std::string item; std::getline(ss, item, ',');) out.push_back(number(item));
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::BadN, "cannot read n list '" + text + "'");
  }
  if (out.empty()) throw Error(ErrorCode::BadN, "empty n list '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subtyping and normal forms over ortholattices with variance-annotated constructors",
               "olsub"};
  app.require_subcommand(1);

  CheckOptions check;
  CLI::App* c = app.add_subcommand("check", "Decide a subtyping query");
  add_check_options(c, check);
  c->add_flag("--proof", check.proof, "Print the reconstructed derivation");

  CheckOptions explain;
  CLI::App* e = app.add_subcommand("explain", "Same as check --proof");
  add_check_options(e, explain);

  NormalizeOptions norm;
  CLI::App* nz = app.add_subcommand("normalize", "Print the canonical minimal form of a term");
  nz->add_option("--mode", norm.mode, "Theory")->check(CLI::IsMember({"ol", "bl"}));
  nz->add_option("--axioms", norm.axioms_path, "Rejected: normal forms take no axioms");
  nz->add_option("--fun", norm.funs, "Symbol declaration, e.g. 'F : (+)'");
  nz->add_flag("--show-internals", norm.show_internals, "Print fresh definition symbols as such");
  nz->add_option("term", norm.term, "Term")->required();

  std::string family;
  std::string n_text;
  CLI::App* g = app.add_subcommand("gen", "Emit a benchmark query family");
  g->add_option("family", family, "Family (sn-tn)")->required();
  g->add_option("n", n_text, "Even size parameter")->required();

  std::string bench_family;
  std::string bench_ns;
  std::string csv_path;
  unsigned threads = 1;
  CLI::App* b = app.add_subcommand("bench", "Time a benchmark family");
  b->add_option("family", bench_family, "Family (sn-tn)")->required();
  b->add_option("ns", bench_ns, "Sizes: 8..32 or 4,8,16")->required();
  b->add_option("--csv", csv_path, "Also write the CSV report here");
  b->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage{"olsub"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : kError;
  }

  try {
    if (c->parsed()) return cmd_check(check, out);
    if (e->parsed()) {
      explain.proof = true;
      return cmd_check(explain, out);
    }
    if (nz->parsed()) return cmd_normalize(norm, out);
    if (g->parsed()) {
      const std::vector<std::size_t> ns = parse_n_list(n_text);
      if (ns.size() != 1) throw Error(ErrorCode::BadN, "gen takes a single n");
      return cmd_gen(family, ns.front(), out);
    }
    if (b->parsed()) return cmd_bench(bench_family, bench_ns, csv_path, threads, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace olsub::cli
