#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "store/catalog.hpp"
#include "store/cli.hpp"
#include "store/error.hpp"
#include "store/model.hpp"
#include "store/persistence.hpp"
#include "store/workflow.hpp"

namespace testing {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return fs::path(STORE_FIXTURE_DIR); }
inline fs::path erp_project_path() { return fixture_dir() / "erp" / "erp.store.json"; }
inline fs::path erp_catalog_path() { return fixture_dir() / "erp" / "erp_catalog.json"; }
inline fs::path erp_script_path() { return fixture_dir() / "erp" / "erp_case_study.store-script"; }

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

// ERP case study after step 7: 12 threats assessed, no requirements yet.
inline store::Project erp_project() { return store::persistence::load(erp_project_path()); }
inline store::catalog::Catalog erp_catalog() { return store::catalog::load_catalog(erp_catalog_path()); }

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("store-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

// Runs `f` and returns the code of the store::Error it throws.
template <typename F>
std::optional<store::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const store::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline store::Project fresh(const std::string& name = "test") { return store::new_project(name, "0123456789abcdef0123456789abcdef"); }

inline store::Threat threat(std::string id, std::string title, std::string description, store::StrideSet stride,
                            std::vector<std::string> assets = {"A1"}) {
  return {std::move(id), std::move(title), std::move(description), std::move(stride), std::move(assets), {}, false};
}

inline store::Asset asset(std::string id, store::CiaSet cia = {store::CiaFacet::Confidentiality},
                          store::AssetPriority priority = store::AssetPriority::High) {
  return {std::move(id), "asset " + id, "", std::move(cia), priority, {}};
}

// Drives a project through the first `steps` steps with minimal content.
store::Project minimal_project(int steps);

// Random valid project for property tests: arbitrary entity mix, random
// workflow progress, random text including quotes, commas, newlines and
// non-ASCII characters.
store::Project random_project(std::mt19937& rng);

// Replays the ERP case-study script into `project_path`, stopping before the
// first command whose arguments start with `stop_before` (empty runs it all).
store::cli::Result replay_erp(const fs::path& project_path, const std::string& stop_before = {});

// ERP project after the script's `step complete 9`, ready for the document.
store::Project erp_validated();

}  // namespace testing
