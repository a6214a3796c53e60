// Command-line front end: graphs, path manifests, verification reports,
// symbolic reduction and operator export.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qball/error.hpp"
#include "qball/graph.hpp"
#include "qball/representation.hpp"
#include "qball/verify.hpp"
#include "qball/word.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qball::PreconditionError("cannot open " + path + " for writing");
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw qball::PreconditionError("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum ball graph algebras: construction and relation checks"};
  app.require_subcommand(1);

  std::string out;
  int n = 0;

  auto* graph_cmd = app.add_subcommand("graph", "Write the ball graph E_n as JSON");
  std::string from;
  graph_cmd->add_option("--n", n, "Ball half-dimension (n >= 1)");
  graph_cmd->add_option("--from", from, "Read a graph JSON file and re-emit it canonically");
  graph_cmd->add_option("--out", out, "Output path (default stdout)");

  auto* paths_cmd = app.add_subcommand("paths", "List the truncated path basis");
  int cutoff = 6;
  int end = 0;
  paths_cmd->add_option("--n", n, "Ball half-dimension")->required();
  paths_cmd->add_option("--cutoff", cutoff, "Loop exponent cutoff");
  paths_cmd->add_option("--end", end, "End vertex index (default the sink)");
  paths_cmd->add_option("--out", out, "Output path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the relation checks and write a report");
  qball::VerifyConfig config;
  std::vector<double> qs;
  std::string format = "json";
  verify_cmd->add_option("--n", config.n, "Ball half-dimension")->required();
  verify_cmd->add_option("--q", qs, "Deformation parameter, repeatable (default 0.5)");
  verify_cmd->add_option("--cutoff", config.cutoff, "Loop exponent cutoff (>= 2)");
  verify_cmd->add_option("--tol", config.tol, "Residual tolerance");
  verify_cmd->add_option("--seed", config.seed, "Seed for sampled checks");
  verify_cmd->add_option("--suite", config.suites, "Restrict to these suites, repeatable");
  verify_cmd->add_option("--format", format, "json or ndjson")->check(CLI::IsMember({"json", "ndjson"}));
  verify_cmd->add_option("--out", out, "Output path (default stdout)");

  auto* reduce_cmd = app.add_subcommand("reduce", "Print the normal form of a word");
  std::string word;
  reduce_cmd->add_option("--n", n, "Ball half-dimension")->required();
  reduce_cmd->add_option("word", word, "Word, e.g. \"S[e]* S[e]\"")->required();

  auto* op_cmd = app.add_subcommand("operator", "Export an operator as row col re im lines");
  int shift = 0;
  double q = 0.5;
  op_cmd->add_option("--n", n, "Ball half-dimension")->required();
  op_cmd->add_option("--cutoff", cutoff, "Loop exponent cutoff");
  op_cmd->add_option("--q", q, "Deformation parameter (for --z)");
  auto* word_opt = op_cmd->add_option("--word", word, "Word to evaluate in the path representation");
  auto* z_opt = op_cmd->add_option("--z", shift, "Export the weighted shift z_i");
  word_opt->excludes(z_opt);
  op_cmd->add_option("--out", out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*graph_cmd) {
      if (!from.empty()) {
        write_output(out, qball::to_json(qball::graph_from_json(read_file(from))) + "\n");
      } else {
        if (n < 1) throw qball::PreconditionError("--n must be >= 1");
        write_output(out, qball::to_json(qball::ball_graph(n)) + "\n");
      }
    } else if (*paths_cmd) {
      if (n < 1) throw qball::PreconditionError("--n must be >= 1");
      const auto g = qball::ball_graph(n);
      std::string text;
      for (const auto& p : qball::enumerate_paths(g, end, cutoff)) text += qball::to_string(g, p) + "\n";
      write_output(out, text);
    } else if (*verify_cmd) {
      if (!qs.empty()) config.qs = qs;
      const auto suite = qball::run_verification(config);
      write_output(out, format == "json" ? qball::to_json(config, suite) : qball::to_ndjson(suite));
      return suite.all_pass() ? 0 : kExitFail;
    } else if (*reduce_cmd) {
      if (n < 1) throw qball::PreconditionError("--n must be >= 1");
      auto g = std::make_shared<const qball::DirectedGraph>(qball::ball_graph(n));
      std::cout << qball::render(qball::parse_word_expr(g, word)) << "\n";
    } else if (*op_cmd) {
      if (n < 1) throw qball::PreconditionError("--n must be >= 1");
      auto g = std::make_shared<const qball::DirectedGraph>(qball::ball_graph(n));
      auto space = std::make_shared<const qball::TruncatedPathSpace>(g, 0, cutoff);
      const auto gens = qball::build_generators(space);
      if (*z_opt)
        write_output(out, qball::weighted_shift(gens, shift, qball::QParam(q)).to_coo());
      else if (*word_opt)
        write_output(out, qball::evaluate_word(qball::parse_word_expr(g, word), gens).to_coo());
      else
        throw qball::PreconditionError("operator needs --word or --z");
    }
  } catch (const qball::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qball::PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qball::HeadroomError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
