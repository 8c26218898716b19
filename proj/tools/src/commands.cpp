#include "torfol_cli/commands.hpp"

#include <chrono>
#include <ostream>
#include <sstream>

#include "torfol/divisor.hpp"
#include "torfol/error.hpp"
#include "torfol/lctset.hpp"
#include "torfol/parallel.hpp"
#include "torfol_cli/catalog.hpp"
#include "torfol_cli/io.hpp"

namespace torfol::cli {

namespace {

std::string hint_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "write every number as an exact rational string such as \"1/2\"";
    case ErrorCode::HypothesisFailed:
      return "choose t1 with -K_{t1} ample and t2 where the structure is delta-lc (see the lct command)";
    case ErrorCode::RequiresSimplicial:
    case ErrorCode::RequiresCompleteSimplicial: return "this operation needs a simplicial (and complete) fan";
    case ErrorCode::InvalidFan:
    case ErrorCode::InvalidCone: return "check that the listed maximal cones are strongly convex and meet in common faces";
    case ErrorCode::NotPrimitive: return "list rays by their primitive lattice generators";
    case ErrorCode::InvalidFoliation: return "W must satisfy rank(W cap N) + generic_dim < n unless generic_dim is 0";
    case ErrorCode::UnknownExample: return "run `torfol examples` for the builtin names";
    case ErrorCode::UnboundedRegion: return "the search region is unbounded; the fan or boundary is degenerate here";
    case ErrorCode::InvalidDivisor: return "the boundary must be effective with one coefficient per ray";
    default: return "check the instance file and flags";
  }
}

json error_json(const std::string& code, const std::string& message, const std::string& hint) {
  return {{"code", code}, {"message", message}, {"hint", hint}};
}

Rational need(const std::optional<std::string>& flag, const Instance* inst, const std::string& param,
              const std::string& flag_name) {
  if (flag) {
    try {
      return parse_rational(*flag);
    } catch (const Error& e) {
      throw InputError("--" + flag_name, e.what());
    }
  }
  if (inst) {
    if (auto it = inst->params.find(param); it != inst->params.end()) return it->second;
  }
  throw InputError("--" + flag_name, "missing value; pass --" + flag_name + " p/q or set params." + param);
}

json inequality_json(const CollectionInequality& c) {
  return {{"collection", to_json(c.collection)},
          {"sum", to_json(c.sum)},
          {"value_of_sum", to_json(c.value_of_sum)},
          {"sum_of_values", to_json(c.sum_of_values)},
          {"strict", c.strict()}};
}

json membership_json(const MembershipReport& m) {
  json j = {{"member", m.member}, {"violated", to_string(m.violated)}, {"t_value", to_json(m.t)}};
  if (m.index) j["index"] = *m.index;
  if (m.m) j["m"] = m.m->get_str();
  return j;
}

json lower_json(const ClosedFormLower& lower) {
  json j = {{"value", to_json(lower.value)}};
  if (lower.maximizer) {
    j["maximizer"] = to_json(*lower.maximizer);
    j["coefficients"] = to_json(lower.coefficients);
    j["cone"] = to_json(lower.cone);
  }
  return j;
}

json certificate_json(const LowerCertificate& c) {
  json perm = json::array();
  for (auto i : c.permutation) perm.push_back(i);
  return {{"value", to_json(c.value)}, {"s", c.s},   {"l", c.l},
          {"x", to_json(c.x)},         {"permutation", perm}, {"fallback", c.fallback},
          {"membership", membership_json(c.membership)}, {"certified", c.certified()}};
}

struct Loaded {
  Instance inst;
  Fan fan;
};

Loaded load(const Options& opts) {
  if (opts.path.empty()) throw InputError("", "missing instance path");
  auto overrides = opts.family;
  if (opts.delta && !overrides.count("delta")) overrides["delta"] = *opts.delta;
  Instance inst = load_instance(opts.path, overrides);
  Fan fan = build_fan(inst);
  return {std::move(inst), std::move(fan)};
}

void describe(json& report, const Instance& inst) {
  report["instance"] = {{"name", inst.name}, {"hash", "fnv1a64:" + fnv1a64_hex(canonical_dump(inst.source))}};
}

int cmd_validate(const Options& opts, json& report) {
  if (opts.path.empty()) throw InputError("", "missing instance path");
  auto overrides = opts.family;
  Instance inst = load_instance(opts.path, overrides);
  describe(report, inst);
  report["operation"] = "Fan";
  json result = {{"dim", inst.lattice.dim()}, {"num_rays", inst.rays.size()}, {"num_max_cones", inst.max_cones.size()}};
  json diagnostics = json::array();
  std::optional<Fan> fan;
  try {
    fan.emplace(build_fan(inst));
  } catch (const InputError& e) {
    diagnostics.push_back({{"pointer", e.pointer()}, {"message", e.message()}});
  }
  if (fan) {
    result["num_cones"] = fan->cones().size();
    result["simplicial"] = fan->is_simplicial();
    result["complete"] = fan->is_complete();
    result["lattice_basis"] = json::array();
    for (const auto& b : fan->lattice().basis_vectors()) result["lattice_basis"].push_back(to_json(b));
    if (inst.has_foliation) {
      try {
        const auto w = build_foliation(inst);
        result["foliation"] = {{"rational_rank", w.rational_rank()},
                               {"generic_dim", w.generic_dim()},
                               {"rank", w.rank()},
                               {"algebraic", w.is_algebraic()}};
      } catch (const InputError& e) {
        diagnostics.push_back({{"pointer", e.pointer()}, {"message", e.message()}});
      }
    }
    try {
      build_delta(inst, *fan);
    } catch (const InputError& e) {
      diagnostics.push_back({{"pointer", e.pointer()}, {"message", e.message()}});
    }
  }
  result["valid"] = diagnostics.empty();
  result["diagnostics"] = diagnostics;
  report["result"] = result;
  return diagnostics.empty() ? 0 : 1;
}

int cmd_fano(const Options& opts, json& report) {
  auto [inst, fan] = load(opts);
  describe(report, inst);
  report["operation"] = "is_fano";
  const auto w = build_foliation(inst);
  const bool fano = is_fano(fan, w);
  const auto kf = foliation_canonical_divisor(fan, w);
  const auto kx = canonical_divisor(fan);
  const auto phi_f = support_function(fan, -kf);
  const auto phi_x = support_function(fan, -kx);
  json fi = json::array(), xi = json::array(), witnesses = json::array();
  for (const auto& c : collection_inequalities(fan, phi_f)) {
    fi.push_back(inequality_json(c));
    if (!c.strict()) witnesses.push_back(inequality_json(c));
  }
  for (const auto& c : collection_inequalities(fan, phi_x)) xi.push_back(inequality_json(c));
  report["result"] = {{"fano", fano},
                      {"anticanonical_variety_ample", is_ample(fan, -kx)},
                      {"foliation_canonical", to_json(kf.coeffs)},
                      {"foliation_inequalities", fi},
                      {"variety_inequalities", xi}};
  report["witnesses"] = witnesses;
  return fano ? 0 : 1;
}

int cmd_dlc(const Options& opts, json& report) {
  auto [inst, fan] = load(opts);
  describe(report, inst);
  report["operation"] = "is_delta_lc";
  const auto w = build_foliation(inst);
  const Rational t = need(opts.t, &inst, "t", "t");
  const Rational d = need(opts.delta, &inst, "delta_lc", "delta");
  AdjointStructure a{fan, w, build_delta(inst, fan), t};
  validate(a);
  const auto res = is_delta_lc(a, d);
  report["result"] = {{"delta_lc", res.holds}, {"t", to_json(t)}, {"delta", to_json(d)}};
  report["witnesses"] = json::array();
  if (res.witness) report["witnesses"].push_back(to_json(fan, *res.witness));
  return res.holds ? 0 : 1;
}

int cmd_lct(const Options& opts, json& report) {
  auto [inst, fan] = load(opts);
  describe(report, inst);
  report["operation"] = "lct_interval";
  const auto w = build_foliation(inst);
  const Rational d = need(opts.delta, &inst, "delta_lc", "delta");
  const auto delta = build_delta(inst, fan);
  const auto interval = lct_interval(fan, w, delta, d);
  json result = {{"delta", to_json(d)}, {"t_interval", to_json(interval)}};
  if (is_zero(delta.coeffs)) {
    const auto lower = closed_form_lower_lct(fan, w, d);
    result["closed_form_lower"] = lower_json(lower);
    if (sgn(lower.value) > 0) result["lower_certificate"] = certificate_json(certify_lower_endpoint(fan, w, lower, d));
  }
  report["result"] = result;
  return 0;
}

int cmd_loci(const Options& opts, json& report) {
  auto [inst, fan] = load(opts);
  describe(report, inst);
  report["operation"] = "dicritical_locus+singular_locus";
  const auto w = build_foliation(inst);
  const auto dic = dicritical_locus(fan, w);
  const auto sing = singular_locus(fan, w);
  report["result"] = {{"dicritical", to_json(dic)},
                      {"singular", to_json(sing)},
                      {"dicrit_equals_sing", dic.cones == sing.cones}};
  return 0;
}

int cmd_certificate(const Options& opts, json& report) {
  auto [inst, fan] = load(opts);
  describe(report, inst);
  report["operation"] = "boundedness_certificate";
  const auto w = build_foliation(inst);
  const Rational t1 = need(opts.t1, &inst, "t1", "t1");
  const Rational t2 = need(opts.t2, &inst, "t2", "t2");
  const Rational d = need(opts.delta, &inst, "delta_lc", "delta");
  const auto cert = boundedness_certificate(fan, w, build_delta(inst, fan), t1, t2, d);
  json vertices = json::array();
  for (const auto& v : cert.vertices) vertices.push_back(to_json(v));
  report["result"] = {{"valid", cert.valid()},
                      {"lambda", to_json(cert.lambda)},
                      {"scale", to_json(cert.scale)},
                      {"vertices", vertices},
                      {"num_lattice_points", cert.points.size()},
                      {"delta_prime", to_json(cert.delta_prime.coeffs)},
                      {"delta_prime_lc", cert.delta_prime_lc}};
  report["witnesses"] = json::array();
  if (cert.witness) report["witnesses"].push_back({{"point", to_json(*cert.witness)}});
  return cert.valid() ? 0 : 1;
}

QVec parse_list(const std::string& s) {
  QVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const Error& e) {
      throw InputError("--x", e.what());
    }
  }
  if (out.empty()) throw InputError("--x", "expected a comma-separated list of rationals");
  return out;
}

int cmd_lctset(const Options& opts, json& report) {
  if (!opts.path.empty()) {
    auto [inst, fan] = load(opts);
    describe(report, inst);
    report["operation"] = "certify_lower_endpoint";
    const auto w = build_foliation(inst);
    const Rational d = need(opts.delta, &inst, "delta_lc", "delta");
    const auto lower = closed_form_lower_lct(fan, w, d);
    json result = {{"delta", to_json(d)}, {"closed_form_lower", lower_json(lower)}};
    if (sgn(lower.value) == 0) {
      result["certified"] = true;
      report["result"] = result;
      return 0;
    }
    const auto cert = certify_lower_endpoint(fan, w, lower, d);
    result["certificate"] = certificate_json(cert);
    result["certified"] = cert.certified();
    report["result"] = result;
    return cert.certified() ? 0 : 1;
  }
  report["operation"] = "is_member_V";
  if (!opts.x) throw InputError("--x", "pass --x with a comma-separated vector, or an instance path");
  const QVec x = parse_list(*opts.x);
  const Rational d = need(opts.delta, nullptr, "delta_lc", "delta");
  const std::size_t s = opts.s.value_or(x.size());
  const std::size_t l = opts.l.value_or(0);
  const auto m = is_member_V(x, s, l, d);
  report["result"] = {{"x", to_json(x)}, {"s", s}, {"l", l}, {"delta", to_json(d)}, {"membership", membership_json(m)}};
  return m.member ? 0 : 1;
}

int cmd_examples(const Options& opts, std::ostream& out) {
  if (!opts.name) {
    json list = json::array();
    for (const auto& f : families()) {
      list.push_back({{"name", f.name}, {"description", f.description}, {"params", f.defaults}});
    }
    out << json{{"families", list}}.dump(2) << "\n";
    return 0;
  }
  auto params = opts.family;
  if (opts.delta) params["delta"] = *opts.delta;
  const auto doc = example_instance(*opts.name, params);
  parse_instance(doc);  // every emitted example must parse
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const Options& opts, std::ostream& out) {
  const Rational d = opts.delta ? parse_rational(*opts.delta) : ratio(1, 2);
  std::optional<Rational> q;
  if (opts.q) q = parse_rational(*opts.q);
  const auto rows = density_sweep(d, opts.s_min, opts.s_max, opts.n, opts.r, q);
  out << "s,k,b_s,b_s_decimal,limit,lct_upper,agrees\n";
  bool all = true;
  for (const auto& row : rows) {
    out << row.s << "," << row.k << "," << row.b.get_str() << "," << to_decimal(row.b, 12) << ","
        << (row.has_limit ? row.limit.get_str() : std::string()) << "," << row.upper.get_str() << ","
        << (row.agrees ? "true" : "false") << "\n";
    all = all && row.agrees;
  }
  return all ? 0 : 1;
}

json echo(const std::string& command, const Options& opts) {
  json flags = json::object();
  if (opts.delta) flags["delta"] = *opts.delta;
  if (opts.t) flags["t"] = *opts.t;
  if (opts.t1) flags["t1"] = *opts.t1;
  if (opts.t2) flags["t2"] = *opts.t2;
  if (opts.x) flags["x"] = *opts.x;
  if (opts.s) flags["s"] = *opts.s;
  if (opts.l) flags["l"] = *opts.l;
  for (const auto& [k, v] : opts.family) flags["family." + k] = v;
  json c = {{"name", command}, {"flags", flags}};
  if (!opts.path.empty()) c["path"] = opts.path;
  return c;
}

}  // namespace

json to_json(const LocusReport& r) {
  auto sets = [](const std::vector<RaySet>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(cli::to_json(s));
    return out;
  };
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(sets(c));
  json joins = json::array();
  for (const auto& j : r.joins) {
    joins.push_back({{"tau1", cli::to_json(j.tau1)},
                     {"tau2", cli::to_json(j.tau2)},
                     {"joined", cli::to_json(j.joined)},
                     {"in_fan", j.in_fan},
                     {"flagged", j.flagged}});
  }
  return {{"cones", sets(r.cones)},
          {"kind", r.kind == StratumKind::Orbit ? "orbit" : "orbit_closure"},
          {"minimal_cones", sets(r.minimal_cones)},
          {"components", comps},
          {"joins", joins},
          {"connected", r.is_connected},
          {"closed", r.is_closed},
          {"model_dependent", r.model_dependent}};
}

json to_json(const TInterval& i) {
  if (i.empty) return nullptr;
  return json::array({i.lo.get_str(), i.hi.get_str()});
}

json to_json(const Fan& fan, const Violation& v) {
  return {{"point", cli::to_json(v.point)},
          {"value", cli::to_json(v.value)},
          {"threshold", cli::to_json(v.threshold)},
          {"cone", cli::to_json(v.cone)},
          {"orbit", cli::to_json(locate(fan, v.point))}};
}

std::size_t tracking_k(const Rational& delta, std::size_t s, const Rational& q) {
  const auto m = floor(Rational(1) / delta);
  std::size_t best = 1;
  Rational best_gap = -1;
  for (std::size_t k = 1; k < s; ++k) {
    if (!density_k_valid(delta, s, k)) continue;
    const Rational km = ratio(m * static_cast<long>(k), static_cast<long>(s));
    const Rational qk = Rational(ceil(km)) - km + ratio(static_cast<long>(k), static_cast<long>(s));
    const Rational gap = abs(qk - q);
    if (best_gap < 0 || gap < best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  return best;
}

std::vector<SweepRow> density_sweep(const Rational& delta, std::size_t s_min, std::size_t s_max, std::size_t n,
                                    std::size_t r, const std::optional<Rational>& q) {
  const auto m = floor(Rational(1) / delta);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t s = std::max<std::size_t>(s_min, 2); s <= s_max; ++s) {
    if (gcd(m, Integer(static_cast<unsigned long>(s))) != 1) continue;
    if (q) {
      jobs.emplace_back(s, tracking_k(delta, s, *q));
    } else {
      for (std::size_t k = 1; k < s; ++k)
        if (density_k_valid(delta, s, k)) jobs.emplace_back(s, k);
    }
  }
  std::vector<SweepRow> rows(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const auto [s, k] = jobs[i];
    const auto inst = density_family(delta, s, k, n, r);
    const auto interval = lct_interval(inst.fan, inst.w, TorusDivisor::zero(inst.fan), delta);
    SweepRow row;
    row.s = s;
    row.k = k;
    row.b = inst.expected_b;
    row.upper = interval.empty ? Rational(-1) : interval.hi;
    row.agrees = !interval.empty && interval.hi == inst.expected_b;
    if (q) {
      row.has_limit = true;
      row.limit = (*q - delta) / *q;
    }
    rows[i] = row;
  });
  return rows;
}

int run_command(const std::string& command, const Options& opts, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  json report;
  report["command"] = echo(command, opts);
  int code = 0;
  try {
    if (command == "examples") return cmd_examples(opts, out);
    if (command == "sweep") return cmd_sweep(opts, out);
    if (command == "validate") {
      code = cmd_validate(opts, report);
    } else if (command == "fano") {
      code = cmd_fano(opts, report);
    } else if (command == "dlc") {
      code = cmd_dlc(opts, report);
    } else if (command == "lct") {
      code = cmd_lct(opts, report);
    } else if (command == "loci") {
      code = cmd_loci(opts, report);
    } else if (command == "certificate") {
      code = cmd_certificate(opts, report);
    } else if (command == "lctset") {
      code = cmd_lctset(opts, report);
    } else {
      throw InputError("", "unknown command '" + command + "'");
    }
  } catch (const InputError& e) {
    json j = error_json("InputError", e.message(), "fix the input at the reported position");
    if (!e.pointer().empty()) j["pointer"] = e.pointer();
    if (e.line()) {
      j["line"] = e.line();
      j["column"] = e.column();
    }
    report["error"] = j;
    err << "torfol: " << e.what() << "\n";
    code = 2;
  } catch (const Error& e) {
    report["error"] = error_json(std::string(to_string(e.code())), e.what(), hint_for(e.code()));
    err << "torfol: " << to_string(e.code()) << ": " << e.what() << "\n  hint: " << hint_for(e.code()) << "\n";
    code = 2;
  } catch (const std::exception& e) {
    report["error"] = error_json("Internal", e.what(), "please report this input");
    err << "torfol: " << e.what() << "\n";
    code = 2;
  }
  report["exit_code"] = code;
  if (opts.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing_ms"] = static_cast<double>(static_cast<long long>(ms * 1000)) / 1000.0;
  }
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace torfol::cli
