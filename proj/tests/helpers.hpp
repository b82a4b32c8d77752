#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "btrob/corpus.hpp"

namespace btrob::test {

inline Sample intent_sample(std::string id, std::string reference, std::string hypothesis, const std::string& e,
                            const std::string& b, const std::string& a) {
  Sample s;
  s.id = std::move(id);
  s.reference = std::move(reference);
  s.hypothesis = std::move(hypothesis);
  s.expected = NluOutcome::intent(e);
  s.before = NluOutcome::intent(b);
  s.after = NluOutcome::intent(a);
  return s;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("btrob-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace btrob::test
