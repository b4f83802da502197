#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tropdiv::cli {

struct Fixture {
  std::string id;
  std::string description;
  // Empty string on success, otherwise what went wrong.
  std::function<std::string()> run;
};

const std::vector<Fixture>& fixtures();

}  // namespace tropdiv::cli
