#include "output_set.hpp"

#include <fstream>

#include "citenorm/errors.hpp"

namespace citenorm::cli {

void OutputSet::commit(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  try {
    for (const auto& [name, content] : files_) {
      const auto path = dir / name;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw validation_error("cannot write '" + path.string() + "'");
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.close();
      if (!out) throw validation_error("failed writing '" + path.string() + "'");
      written.push_back(path);
    }
  } catch (...) {
    for (const auto& path : written) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
    throw;
  }
}

}  // namespace citenorm::cli
