#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "batchcolor/cli.hpp"

namespace bc = batchcolor::cli;

int main(int argc, char** argv) {
  CLI::App app{"Batch online graph coloring: algorithms, adversaries and exact oracles"};
  app.require_subcommand(1);
  std::string out_path;

  bc::SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run an algorithm on a batched instance");
  s->add_option("--algorithm", solve.algorithm, "Algorithm name")->required();
  s->add_option("--input", solve.input, "Instance JSON")->required();
  s->add_option("--objective", solve.objective, "colors or sum");
  s->add_option("--k", solve.k, "Batch count announced to k-aware algorithms");
  s->add_option("--schedule", solve.schedule, "Schedule for batch-color-f, e.g. f=isq,cf=329/200");
  s->add_option("--seed", solve.seed, "Seed for random-proper");
  s->add_flag("--diagnostics", solve.diagnostics, "Record algorithm internals");
  s->add_option("--out", out_path, "Write the result here instead of stdout");

  bc::AdversaryArgs adv;
  auto* a = app.add_subcommand("adversary", "Play an algorithm against an adaptive adversary");
  a->add_option("--name", adv.name, "Adversary name")->required();
  a->add_option("--params", adv.params, "Parameters, e.g. k=2,M=9");
  a->add_option("--algorithm", adv.algorithm, "Algorithm name")->required();
  a->add_option("--schedule", adv.schedule, "Schedule for batch-color-f");
  a->add_option("--seed", adv.seed, "Seed for random-proper");
  a->add_option("--trials", adv.trials, "Independent runs with seeds seed, seed+1, ...");
  a->add_flag("--diagnostics", adv.diagnostics, "Record algorithm internals");
  a->add_option("--out", out_path, "Write the transcript here instead of stdout");

  bc::OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Exact offline optimum");
  o->add_option("--input", oracle.input, "Instance JSON")->required();
  o->add_option("--objective", oracle.objective, "colors or sum");
  o->add_option("--out", out_path, "Write the result here instead of stdout");

  bc::VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a coloring against an instance");
  v->add_option("--input", verify.input, "Instance JSON")->required();
  v->add_option("--coloring", verify.coloring, "Coloring JSON")->required();
  v->add_option("--out", out_path, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? bc::ok : bc::usage;
  }
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << bc::error_json("usage", "cannot write " + out_path).dump(2) << "\n";
      return bc::usage;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (s->parsed()) return bc::cmd_solve(solve, out, std::cerr);
  if (a->parsed()) return bc::cmd_adversary(adv, out, std::cerr);
  if (o->parsed()) return bc::cmd_oracle(oracle, out, std::cerr);
  return bc::cmd_verify(verify, out, std::cerr);
}
