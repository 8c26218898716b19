#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace torfol::cli {

struct FamilyInfo {
  std::string name;
  std::string description;
  std::map<std::string, std::string> defaults;
};

const std::vector<FamilyInfo>& families();

// Concrete instance document for a builtin family; throws Error(UnknownExample) for unknown names.
nlohmann::json example_instance(const std::string& name, const std::map<std::string, std::string>& params = {});

}  // namespace torfol::cli
