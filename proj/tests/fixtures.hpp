// Shared test helper: loads fixture networks from the directory named by the
// DIMERWEB_FIXTURES environment variable (set by ctest; defaults to
// ../fixtures relative to the working directory).
#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "dimerweb/network.hpp"

inline std::string fixture_path(const std::string& name) {
  if (const char* dir = std::getenv("DIMERWEB_FIXTURES"))
    return std::string(dir) + "/" + name;
  for (const char* dir : {"fixtures", "../fixtures", "../../fixtures"}) {
    std::string cand = std::string(dir) + "/" + name;
    if (std::filesystem::exists(cand)) return cand;
  }
  return "fixtures/" + name;
}

inline dimerweb::PlanarNetwork load_fixture(const std::string& name) {
  return dimerweb::PlanarNetwork::from_file(fixture_path(name));
}
