#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace capgeo::pipeline {

// Content-addressed image store: <root>/images/<sha256-digest>.
class ContentStore {
public:
  explicit ContentStore(std::filesystem::path root);

  std::string put_bytes(const std::vector<unsigned char>& bytes);
  std::string put_file(const std::filesystem::path& file);  // throws DataError

  bool has(const std::string& digest) const;
  std::vector<unsigned char> get(const std::string& digest) const;  // throws DataError
  std::filesystem::path path_of(const std::string& digest) const;

  const std::filesystem::path& root() const { return root_; }

private:
  std::filesystem::path root_;
};

}  // namespace capgeo::pipeline
