#pragma once

#include <string>
#include <utility>
#include <vector>

namespace icbargain::cli {

// Flag values reproducing one published figure.
struct Preset {
  std::string name;
  std::string command;
  std::string caption;
  std::vector<std::pair<std::string, std::string>> values;  // long flag name -> value
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace icbargain::cli
