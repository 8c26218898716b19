#include "torfol_cli/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "torfol/error.hpp"
#include "torfol_cli/catalog.hpp"

namespace torfol::cli {

std::string InputError::format(const std::string& p, const std::string& m, std::size_t l, std::size_t c) {
  std::string out;
  if (l) out += std::to_string(l) + ":" + std::to_string(c) + ": ";
  if (!p.empty()) out += p + ": ";
  return out + m;
}

namespace {

class Scanner {
 public:
  explicit Scanner(const std::string& t) : t_(t) {}

  std::optional<std::size_t> find(const std::vector<std::string>& tokens) {
    ws();
    for (const auto& tok : tokens) {
      if (i_ >= t_.size()) return std::nullopt;
      if (t_[i_] == '{') {
        ++i_;
        bool found = false;
        while (true) {
          ws();
          if (i_ >= t_.size() || t_[i_] == '}') return std::nullopt;
          auto key = read_string();
          if (!key) return std::nullopt;
          ws();
          if (i_ >= t_.size() || t_[i_] != ':') return std::nullopt;
          ++i_;
          ws();
          if (*key == tok) {
            found = true;
            break;
          }
          if (!skip_value()) return std::nullopt;
          ws();
          if (i_ < t_.size() && t_[i_] == ',') ++i_;
        }
        if (!found) return std::nullopt;
      } else if (t_[i_] == '[') {
        ++i_;
        std::size_t want = 0;
        try {
          want = std::stoul(tok);
        } catch (...) {
          return std::nullopt;
        }
        for (std::size_t k = 0; k < want; ++k) {
          ws();
          if (i_ >= t_.size() || t_[i_] == ']') return std::nullopt;
          if (!skip_value()) return std::nullopt;
          ws();
          if (i_ >= t_.size() || t_[i_] != ',') return std::nullopt;
          ++i_;
        }
        ws();
        if (i_ >= t_.size() || t_[i_] == ']') return std::nullopt;
      } else {
        return std::nullopt;
      }
    }
    return i_;
  }

 private:
  void ws() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\n' || t_[i_] == '\r' || t_[i_] == '\t')) ++i_;
  }

  std::optional<std::string> read_string() {
    if (i_ >= t_.size() || t_[i_] != '"') return std::nullopt;
    ++i_;
    std::string out;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') {
        ++i_;
        if (i_ >= t_.size()) return std::nullopt;
      }
      out += t_[i_++];
    }
    if (i_ >= t_.size()) return std::nullopt;
    ++i_;
    return out;
  }

  bool skip_value() {
    ws();
    if (i_ >= t_.size()) return false;
    const char c = t_[i_];
    if (c == '"') return read_string().has_value();
    if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      ws();
      if (i_ < t_.size() && t_[i_] == close) {
        ++i_;
        return true;
      }
      while (true) {
        ws();
        if (c == '{') {
          if (!read_string()) return false;
          ws();
          if (i_ >= t_.size() || t_[i_] != ':') return false;
          ++i_;
        }
        if (!skip_value()) return false;
        ws();
        if (i_ >= t_.size()) return false;
        if (t_[i_] == ',') {
          ++i_;
          continue;
        }
        if (t_[i_] == close) {
          ++i_;
          return true;
        }
        return false;
      }
    }
    while (i_ < t_.size() && t_[i_] != ',' && t_[i_] != ']' && t_[i_] != '}' && t_[i_] != ' ' && t_[i_] != '\n' &&
           t_[i_] != '\r' && t_[i_] != '\t')
      ++i_;
    return true;
  }

  const std::string& t_;
  std::size_t i_ = 0;
};

std::vector<std::string> split_pointer(const std::string& pointer) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < pointer.size()) {
    if (pointer[pos] != '/') break;
    const auto next = pointer.find('/', pos + 1);
    out.push_back(pointer.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1));
    pos = next;
  }
  return out;
}

struct Context {
  const std::string& text;

  [[noreturn]] void error(const std::string& pointer, const std::string& message) const {
    std::size_t line = 0, col = 0;
    if (!text.empty()) {
      if (auto off = locate_pointer(text, pointer)) std::tie(line, col) = line_column(text, *off);
    }
    throw InputError(pointer, message, line, col);
  }

  Rational rational(const json& j, const std::string& where) const {
    try {
      return parse_rational_field(j, where);
    } catch (const Error& e) {
      error(where, e.what());
    } catch (const InputError& e) {
      error(where, e.message());
    }
  }

  QVec vector(const json& j, const std::string& where) const {
    if (!j.is_array()) error(where, "expected an array of exact rationals");
    QVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational(j[i], where + "/" + std::to_string(i)));
    return v;
  }

  std::vector<QVec> vectors(const json& j, const std::string& where, std::size_t dim) const {
    if (!j.is_array()) error(where, "expected an array of vectors");
    std::vector<QVec> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto p = where + "/" + std::to_string(i);
      out.push_back(vector(j[i], p));
      if (out.back().size() != dim) {
        error(p, "expected " + std::to_string(dim) + " entries, found " + std::to_string(out.back().size()));
      }
    }
    return out;
  }

  std::size_t count(const json& j, const std::string& where) const {
    if (!j.is_number_integer() || j.get<long long>() < 0) error(where, "expected a non-negative integer");
    return j.get<std::size_t>();
  }
};

}  // namespace

std::optional<std::size_t> locate_pointer(const std::string& text, const std::string& pointer) {
  Scanner s(text);
  return s.find(split_pointer(pointer));
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rational parse_rational_field(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    throw InputError(where, "decimal number " + j.dump() + " is not exact; write it as a \"p/q\" string");
  }
  if (j.is_number_integer()) {
    throw InputError(where, "number " + j.dump() + " must be given as an exact-rational string, e.g. \"" +
                                j.dump() + "\"");
  }
  throw InputError(where, "expected an exact-rational string \"p/q\"");
}

json to_json(const Rational& q) { return q.get_str(); }

json to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

json to_json(const RaySet& s) {
  json out = json::array();
  for (auto i : s) out.push_back(i);
  return out;
}

Instance parse_instance(const json& doc, const std::string& text) {
  const Context ctx{text};
  if (!doc.is_object()) ctx.error("", "an instance must be a JSON object");
  Instance inst;
  inst.source = doc;
  inst.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "instance";

  if (!doc.contains("rays")) ctx.error("", "missing field \"rays\"");
  const auto& jr = doc["rays"];
  if (!jr.is_array() || jr.empty()) ctx.error("/rays", "expected a non-empty array of ray vectors");
  const QVec first = ctx.vector(jr[0], "/rays/0");
  const std::size_t n = first.size();
  if (n == 0) ctx.error("/rays/0", "rays must have at least one coordinate");
  inst.rays = ctx.vectors(jr, "/rays", n);

  if (doc.contains("lattice_basis")) {
    auto b = ctx.vectors(doc["lattice_basis"], "/lattice_basis", n);
    if (b.size() != n) ctx.error("/lattice_basis", "expected " + std::to_string(n) + " basis vectors");
    try {
      inst.lattice = AmbientLattice(QMatrix::from_columns(b, n));
    } catch (const Error& e) {
      ctx.error("/lattice_basis", e.what());
    }
  } else if (doc.contains("lattice_generators")) {
    auto g = ctx.vectors(doc["lattice_generators"], "/lattice_generators", n);
    try {
      inst.lattice = AmbientLattice::generated_by(n, g);
    } catch (const Error& e) {
      ctx.error("/lattice_generators", e.what());
    }
  } else {
    inst.lattice = AmbientLattice::standard(n);
  }

  if (!doc.contains("max_cones")) ctx.error("", "missing field \"max_cones\"");
  const auto& jc = doc["max_cones"];
  if (!jc.is_array()) ctx.error("/max_cones", "expected an array of ray-index arrays");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const auto p = "/max_cones/" + std::to_string(i);
    if (!jc[i].is_array()) ctx.error(p, "expected an array of ray indices");
    RaySet s;
    for (std::size_t k = 0; k < jc[i].size(); ++k) {
      const auto idx = ctx.count(jc[i][k], p + "/" + std::to_string(k));
      if (idx >= inst.rays.size()) ctx.error(p + "/" + std::to_string(k), "ray index out of range");
      s.push_back(idx);
    }
    inst.max_cones.push_back(std::move(s));
  }

  if (doc.contains("foliation")) {
    const auto& jf = doc["foliation"];
    if (!jf.is_object()) ctx.error("/foliation", "expected an object");
    inst.has_foliation = true;
    if (jf.contains("lattice_generators")) {
      inst.foliation_generators = ctx.vectors(jf["lattice_generators"], "/foliation/lattice_generators", n);
    }
    if (jf.contains("generic_dim")) inst.generic_dim = ctx.count(jf["generic_dim"], "/foliation/generic_dim");
  }

  inst.delta.assign(inst.rays.size(), Rational(0));
  if (doc.contains("delta")) {
    const auto& jd = doc["delta"];
    if (!jd.is_object() || !jd.contains("coeffs")) ctx.error("/delta", "expected {\"coeffs\": ...}");
    const auto& c = jd["coeffs"];
    if (c.is_array()) {
      if (c.size() != inst.rays.size()) ctx.error("/delta/coeffs", "expected one coefficient per ray");
      for (std::size_t i = 0; i < c.size(); ++i)
        inst.delta[i] = ctx.rational(c[i], "/delta/coeffs/" + std::to_string(i));
    } else if (c.is_object()) {
      for (const auto& [key, value] : c.items()) {
        std::size_t idx = 0;
        try {
          idx = std::stoul(key);
        } catch (...) {
          ctx.error("/delta/coeffs/" + key, "keys must be ray indices");
        }
        if (idx >= inst.rays.size()) ctx.error("/delta/coeffs/" + key, "ray index out of range");
        inst.delta[idx] = ctx.rational(value, "/delta/coeffs/" + key);
      }
    } else {
      ctx.error("/delta/coeffs", "expected an array or an object keyed by ray index");
    }
  }

  if (doc.contains("params")) {
    const auto& jp = doc["params"];
    if (!jp.is_object()) ctx.error("/params", "expected an object");
    for (const auto& [key, value] : jp.items()) inst.params[key] = ctx.rational(value, "/params/" + key);
  }
  return inst;
}

Instance load_instance(const std::string& path, const std::map<std::string, std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError("", std::string("malformed JSON: ") + e.what(), line, col);
  }
  if (doc.is_object() && doc.contains("family")) {
    if (!doc["family"].is_string()) throw InputError("/family", "expected a family name");
    std::map<std::string, std::string> params;
    if (doc.contains("family_params")) {
      for (const auto& [key, value] : doc["family_params"].items()) {
        params[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    for (const auto& [key, value] : overrides) params[key] = value;
    return parse_instance(example_instance(doc["family"].get<std::string>(), params));
  }
  return parse_instance(doc, text);
}

namespace {

std::string pointer_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector:
    case ErrorCode::NotPrimitive:
    case ErrorCode::RayNotRational: return "/rays";
    default: return "/max_cones";
  }
}

}  // namespace

Fan build_fan(const Instance& inst) {
  try {
    return Fan(inst.lattice, inst.rays, inst.max_cones);
  } catch (const Error& e) {
    throw InputError(pointer_for(e.code()), std::string(to_string(e.code())) + ": " + e.what());
  }
}

FoliationSpace build_foliation(const Instance& inst) {
  if (!inst.has_foliation) throw InputError("/foliation", "this command needs a \"foliation\" field");
  try {
    return FoliationSpace(inst.lattice, inst.foliation_generators, inst.generic_dim);
  } catch (const Error& e) {
    throw InputError("/foliation", std::string(to_string(e.code())) + ": " + e.what());
  }
}

TorusDivisor build_delta(const Instance& inst, const Fan& fan) {
  if (inst.delta.size() != fan.num_rays()) throw InputError("/delta", "expected one coefficient per ray");
  for (std::size_t i = 0; i < inst.delta.size(); ++i) {
    if (sgn(inst.delta[i]) < 0) throw InputError("/delta/coeffs/" + std::to_string(i), "boundary must be effective");
  }
  return {inst.delta};
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_decimal(const Rational& q, int digits) {
  std::string out = sgn(q) < 0 ? "-" : "";
  Rational a = abs(q);
  Integer whole = floor(a);
  out += whole.get_str();
  if (digits <= 0) return out;
  out += ".";
  Rational rest = a - Rational(whole);
  for (int i = 0; i < digits; ++i) {
    rest *= 10;
    Integer d = floor(rest);
    out += d.get_str();
    rest -= Rational(d);
  }
  return out;
}

}  // namespace torfol::cli
