#pragma once

// Shared plumbing for the test binaries: locating the bundled data files,
// scratch directories, small file helpers.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fixtures {

// Root of the repository's data/ directory, injected by ctest.
inline std::string data_dir() {
  const char* v = std::getenv("RHOTICA_DATA_DIR");
  if (!v || !*v) throw std::runtime_error("RHOTICA_DATA_DIR is not set");
  return v;
}

inline std::string data_path(const std::string& relative) { return data_dir() + "/" + relative; }

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::random_device rd;
    std::mt19937_64 gen(rd());
    std::uniform_int_distribution<unsigned long long> dist;
    for (int attempt = 0; attempt < 16; ++attempt) {
      std::ostringstream name;
      name << "rhotica-test-" << std::hex << dist(gen);
      auto candidate = std::filesystem::temp_directory_path() / name.str();
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path = candidate;
        return;
      }
    }
    throw std::runtime_error("could not create a scratch directory");
  }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }

  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixtures
