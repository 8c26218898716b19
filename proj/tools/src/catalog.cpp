#include "torfol_cli/catalog.hpp"

#include <algorithm>

#include "torfol/error.hpp"
#include "torfol/lctset.hpp"
#include "torfol_cli/io.hpp"

namespace torfol::cli {

namespace {

json vec(std::initializer_list<long> v) {
  json out = json::array();
  for (long x : v) out.push_back(std::to_string(x));
  return out;
}

json cones(std::initializer_list<std::initializer_list<std::size_t>> cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(json(std::vector<std::size_t>(c)));
  return out;
}

json vectors(const std::vector<QVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

std::size_t count_param(const std::map<std::string, std::string>& p, const std::string& key, std::size_t lo) {
  const auto& s = p.at(key);
  const Rational q = parse_rational(s);
  if (!is_integral(q) || q < lo) {
    fail(ErrorCode::InvalidArgument, "parameter " + key + " must be an integer >= " + std::to_string(lo));
  }
  return q.get_num().get_ui();
}

json projective(std::size_t n) {
  json rays = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < n; ++j) r.push_back(i == j ? "1" : "0");
    rays.push_back(r);
  }
  rays.push_back(json(std::vector<std::string>(n, "-1")));
  json max_cones = json::array();
  for (std::size_t skip = n + 1; skip-- > 0;) {
    json c = json::array();
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    max_cones.push_back(c);
  }
  return {{"rays", rays}, {"max_cones", max_cones}};
}

}  // namespace

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> list = {
      {"p3-wa", "P^3 with W spanned by e1 and a generic direction: Fano, not algebraically integrable", {}},
      {"nonfano-s", "foliation with -K_F ample on a smooth X whose -K_X is not ample", {{"s", "1"}}},
      {"p4-pi", "P^4 with an irrational W: dicritical locus not Zariski closed", {}},
      {"p3-w2021", "P^3 with W spanned by (2,0,1), (0,2,1): reducible dicritical locus", {}},
      {"acc-n", "quadrant in Z^2 + Z(1/n,1/n), W = C e2: lct interval [(n-4)/(n-2), 1]", {{"n", "6"}}},
      {"density", "affine family with upper endpoint b_s", {{"delta", "1/2"}, {"s", "5"}, {"k", "2"}, {"n", "2"}, {"r", "1"}}},
  };
  return list;
}

json example_instance(const std::string& name, const std::map<std::string, std::string>& given) {
  const auto& fams = families();
  const auto it = std::find_if(fams.begin(), fams.end(), [&](const FamilyInfo& f) { return f.name == name; });
  if (it == fams.end()) {
    std::string known;
    for (const auto& f : fams) known += (known.empty() ? "" : ", ") + f.name;
    fail(ErrorCode::UnknownExample, "unknown example '" + name + "'; known: " + known);
  }
  std::map<std::string, std::string> p = it->defaults;
  for (const auto& [k, v] : given) {
    if (p.count(k)) p[k] = v;
  }
  json doc;
  json params = json::object();
  if (name == "p3-wa") {
    doc = projective(3);
    doc["foliation"] = {{"lattice_generators", json::array({vec({1, 0, 0})})}, {"generic_dim", 1}};
  } else if (name == "nonfano-s") {
    const long s = static_cast<long>(count_param(p, "s", 1));
    doc["rays"] = json::array({vec({0, s, 1}), vec({0, s, -1}), vec({-1, 1, 0}), vec({1, 0, 0}), vec({0, -1, 0})});
    doc["max_cones"] = cones({{0, 2, 3}, {1, 2, 3}, {0, 2, 4}, {0, 3, 4}, {1, 2, 4}, {1, 3, 4}});
    doc["foliation"] = {{"lattice_generators", json::array({vec({0, 1, 0}), vec({0, 0, 1})})}, {"generic_dim", 0}};
    p = {{"s", std::to_string(s)}};
  } else if (name == "p4-pi") {
    doc = projective(4);
    doc["foliation"] = {{"lattice_generators", json::array({vec({0, 1, 0, 0}), vec({0, 0, 1, 1})})},
                        {"generic_dim", 1}};
    params = {{"t", "1"}, {"delta_lc", "1/10"}};
  } else if (name == "p3-w2021") {
    doc = projective(3);
    doc["foliation"] = {{"lattice_generators", json::array({vec({2, 0, 1}), vec({0, 2, 1})})}, {"generic_dim", 0}};
  } else if (name == "acc-n") {
    const std::size_t n = count_param(p, "n", 1);
    const std::string f = ratio(1, n).get_str();
    doc["lattice_generators"] = json::array({vec({1, 0}), vec({0, 1}), json::array({f, f})});
    doc["rays"] = json::array({vec({1, 0}), vec({0, 1})});
    doc["max_cones"] = cones({{0, 1}});
    doc["foliation"] = {{"lattice_generators", json::array({vec({0, 1})})}, {"generic_dim", 0}};
    params = {{"delta_lc", "1/2"}};
    p = {{"n", std::to_string(n)}};
  } else {
    const Rational delta = parse_rational(p.at("delta"));
    const auto s = count_param(p, "s", 1), k = count_param(p, "k", 1);
    const auto n = count_param(p, "n", 2), r = count_param(p, "r", 1);
    const auto inst = density_family(delta, s, k, n, r);
    doc["lattice_basis"] = vectors(inst.fan.lattice().basis_vectors());
    doc["rays"] = vectors(inst.fan.rays());
    json mc = json::array();
    for (const auto& c : inst.fan.maximal_cones()) mc.push_back(to_json(c));
    doc["max_cones"] = mc;
    doc["foliation"] = {{"lattice_generators", vectors(inst.w.lattice_basis())}, {"generic_dim", inst.w.generic_dim()}};
    params = {{"delta_lc", delta.get_str()}};
    p = {{"delta", delta.get_str()}, {"s", std::to_string(s)}, {"k", std::to_string(k)}, {"n", std::to_string(n)},
         {"r", std::to_string(r)}};
  }
  doc["name"] = name;
  if (!p.empty()) doc["family_params"] = p;
  if (!params.empty()) doc["params"] = params;
  return doc;
}

}  // namespace torfol::cli
