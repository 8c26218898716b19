#include <iostream>

#include <CLI11.hpp>

#include "torfol_cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"torfol: toric foliations, adjoint structures and delta-lc thresholds with exact arithmetic"};
  app.require_subcommand(1);
  torfol::cli::Options opts;
  std::optional<std::string> n, s, k, r;
  bool no_timing = false;

  auto with_instance = [&](CLI::App* sub) {
    sub->add_option("path", opts.path, "instance JSON file")->required();
    sub->add_option("--n", n, "family parameter n");
    sub->add_option("--s", s, "family parameter s");
    sub->add_option("--k", k, "family parameter k");
    sub->add_option("--r", r, "family parameter r");
    sub->add_flag("--no-timing", no_timing, "omit the timing field");
  };
  auto* validate = app.add_subcommand("validate", "check fan and foliation axioms");
  with_instance(validate);
  auto* fano = app.add_subcommand("fano", "decide whether -K_F is ample");
  with_instance(fano);
  auto* dlc = app.add_subcommand("dlc", "decide delta-lc at a given t");
  with_instance(dlc);
  dlc->add_option("--t", opts.t, "adjoint parameter t");
  auto* lct = app.add_subcommand("lct", "exact interval of t where the structure is delta-lc");
  with_instance(lct);
  auto* loci = app.add_subcommand("loci", "dicritical and singular loci");
  with_instance(loci);
  auto* cert = app.add_subcommand("certificate", "boundedness certificate");
  with_instance(cert);
  cert->add_option("--t1", opts.t1, "t with -K_t ample");
  cert->add_option("--t2", opts.t2, "t where the structure is delta-lc");
  for (auto* sub : {dlc, lct, cert}) sub->add_option("--delta", opts.delta, "lc level delta as p/q");

  auto* lctset = app.add_subcommand("lctset", "membership in delta-V_{s,l}, or certification of an lct lower endpoint");
  lctset->add_option("path", opts.path, "instance JSON file (optional)");
  lctset->add_option("--x", opts.x, "comma-separated vector of rationals");
  lctset->add_option("--s", opts.s, "s");
  lctset->add_option("--l", opts.l, "l");
  lctset->add_option("--delta", opts.delta, "lc level delta as p/q");
  lctset->add_flag("--no-timing", no_timing, "omit the timing field");

  std::string name;
  auto* examples = app.add_subcommand("examples", "list builtin families or emit one instance");
  examples->add_option("name", name, "family name");
  examples->add_option("--n", n, "family parameter n");
  examples->add_option("--s", s, "family parameter s");
  examples->add_option("--k", k, "family parameter k");
  examples->add_option("--r", r, "family parameter r");
  examples->add_option("--delta", opts.delta, "family parameter delta");
  examples->add_flag("--no-timing", no_timing, "accepted for uniformity; no timing is emitted");

  auto* sweep = app.add_subcommand("sweep", "density family sweep as CSV");
  sweep->add_option("--delta", opts.delta, "lc level delta (default 1/2)");
  sweep->add_option("--s-min", opts.s_min, "smallest s");
  sweep->add_option("--s-max", opts.s_max, "largest s");
  sweep->add_option("--n", opts.n, "ambient dimension");
  sweep->add_option("--r", opts.r, "rank of W");
  sweep->add_option("--q", opts.q, "track k with q_k closest to q");
  sweep->add_flag("--no-timing", no_timing, "accepted for uniformity; no timing is emitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (n) opts.family["n"] = *n;
  if (s) opts.family["s"] = *s;
  if (k) opts.family["k"] = *k;
  if (r) opts.family["r"] = *r;
  if (!name.empty()) opts.name = name;
  opts.timing = !no_timing;
  auto* chosen = app.get_subcommands().front();
  return torfol::cli::run_command(chosen->get_name(), opts, std::cout, std::cerr);
}
