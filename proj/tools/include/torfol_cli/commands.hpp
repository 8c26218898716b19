#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "torfol/adjoint.hpp"
#include "torfol/foliation.hpp"

namespace torfol::cli {

struct Options {
  std::string path;
  std::map<std::string, std::string> family;  // overrides for family files: n, s, k, r, delta
  std::optional<std::string> delta, t, t1, t2;
  // lctset without a path
  std::optional<std::string> x;
  std::optional<std::size_t> s, l;
  // examples
  std::optional<std::string> name;
  // sweep
  std::size_t s_min = 3, s_max = 11, n = 2, r = 1;
  std::optional<std::string> q;
  bool timing = true;
};

// Runs one command, writing the report to `out` and diagnostics to `err`; returns the exit code.
int run_command(const std::string& command, const Options& opts, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const LocusReport& r);
nlohmann::json to_json(const TInterval& i);
nlohmann::json to_json(const Fan& fan, const Violation& v);

// Row of the density sweep.
struct SweepRow {
  std::size_t s = 0, k = 0;
  Rational b, limit, upper;
  bool has_limit = false, agrees = false;
};
std::vector<SweepRow> density_sweep(const Rational& delta, std::size_t s_min, std::size_t s_max, std::size_t n,
                                    std::size_t r, const std::optional<Rational>& q);
// Valid 0 < k < s minimizing |q_k - q|, ties to the smaller k.
std::size_t tracking_k(const Rational& delta, std::size_t s, const Rational& q);

}  // namespace torfol::cli
