#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace citenorm::cli {

/// Staged command outputs: everything is rendered in memory first and hits
/// the filesystem only in commit(). A failure mid-write removes the files
/// already written, so an output directory never holds partial results.
class OutputSet {
 public:
  void add(std::string filename, std::string content) {
    files_.emplace_back(std::move(filename), std::move(content));
  }

  void commit(const std::filesystem::path& dir);

  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace citenorm::cli
