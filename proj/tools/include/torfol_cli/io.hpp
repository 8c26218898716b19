#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "torfol/adjoint.hpp"
#include "torfol/fan.hpp"
#include "torfol/foliation.hpp"

namespace torfol::cli {

using nlohmann::json;

// Input problem with a position (1-based line and column) when known.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, std::string message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(path, message, line, column)),
        pointer_(std::move(path)),
        message_(std::move(message)),
        line_(line),
        column_(column) {}
  const std::string& pointer() const noexcept { return pointer_; }
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& p, const std::string& m, std::size_t l, std::size_t c);
  std::string pointer_, message_;
  std::size_t line_, column_;
};

struct Instance {
  std::string name;
  json source;  // the concrete instance document
  AmbientLattice lattice;
  std::vector<QVec> rays;
  std::vector<RaySet> max_cones;
  std::vector<QVec> foliation_generators;
  std::size_t generic_dim = 0;
  bool has_foliation = false;
  QVec delta;
  std::map<std::string, Rational> params;
};

Rational parse_rational_field(const json& j, const std::string& where);
json to_json(const Rational& q);
json to_json(std::span<const Rational> v);
json to_json(const RaySet& s);

// Parses a concrete instance document; `text` (when given) is used to report line positions.
Instance parse_instance(const json& doc, const std::string& text = {});
// Reads a file: concrete instance or {"family": ..., "family_params": ...}; overrides replace family params.
Instance load_instance(const std::string& path, const std::map<std::string, std::string>& overrides = {});

Fan build_fan(const Instance& inst);
FoliationSpace build_foliation(const Instance& inst);
TorusDivisor build_delta(const Instance& inst, const Fan& fan);

// Byte offset of the value at a JSON pointer inside raw text, if found.
std::optional<std::size_t> locate_pointer(const std::string& text, const std::string& pointer);
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset);

std::string canonical_dump(const json& j);
std::string fnv1a64_hex(const std::string& bytes);

// Decimal rendering with a fixed number of fractional digits (truncated toward zero).
std::string to_decimal(const Rational& q, int digits);

}  // namespace torfol::cli
