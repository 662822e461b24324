#include "capgeo/pipeline/content_store.hpp"

#include <fstream>

#include "capgeo/digest.hpp"
#include "capgeo/errors.hpp"

namespace capgeo::pipeline {

namespace fs = std::filesystem;

ContentStore::ContentStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "images");
}

fs::path ContentStore::path_of(const std::string& digest) const {
  return root_ / "images" / digest;
}

std::string ContentStore::put_bytes(const std::vector<unsigned char>& bytes) {
  const std::string digest = sha256_hex(bytes);
  const fs::path path = path_of(digest);
  if (!fs::exists(path)) {
    const fs::path tmp = path.string() + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    fs::rename(tmp, path);
  }
  return digest;
}

std::string ContentStore::put_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot read image file: " + file.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  return put_bytes(bytes);
}

bool ContentStore::has(const std::string& digest) const { return fs::exists(path_of(digest)); }

std::vector<unsigned char> ContentStore::get(const std::string& digest) const {
  std::ifstream in(path_of(digest), std::ios::binary);
  if (!in) throw DataError("image digest not in content store: " + digest);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace capgeo::pipeline
