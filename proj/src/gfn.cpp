#include "cellwave/gfn.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace cellwave {

namespace fs = std::filesystem;
using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "GFN binary io assumes a little-endian host");

void write_gfn(const GridFunction& f, const std::string& manifest_path) {
  fs::path mpath(manifest_path);
  fs::path dpath = mpath;
  dpath.replace_extension(".bin");

  json manifest{
      {"n", f.dim()},
      {"bbox", json::array({f.bbox().lo, f.bbox().hi})},
      {"J", f.resolution()},
      {"dims", f.dims()},
      {"data", dpath.filename().string()},
  };
  std::ofstream ms(mpath);
  if (!ms) throw std::runtime_error("cannot open " + manifest_path);
  ms << manifest.dump(2) << "\n";

  std::ofstream ds(dpath, std::ios::binary);
  if (!ds) throw std::runtime_error("cannot open " + dpath.string());
  ds.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

GridFunction read_gfn(const std::string& manifest_path) {
  std::ifstream ms(manifest_path);
  if (!ms) throw std::runtime_error("cannot open " + manifest_path);
  json manifest = json::parse(ms);

  const int n = manifest.at("n").get<int>();
  auto lo = manifest.at("bbox").at(0).get<std::vector<double>>();
  auto hi = manifest.at("bbox").at(1).get<std::vector<double>>();
  const int J = manifest.at("J").get<int>();
  auto dims = manifest.at("dims").get<std::vector<std::int64_t>>();
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n ||
      static_cast<int>(dims.size()) != n)
    throw std::runtime_error("GFN manifest dimension mismatch");

  GridFunction f(Box(std::move(lo), std::move(hi)), J);
  for (int i = 0; i < n; ++i)
    if (f.dims()[i] != dims[i]) throw std::runtime_error("GFN dims inconsistent with bbox and J");

  fs::path dpath = fs::path(manifest_path).parent_path() / manifest.at("data").get<std::string>();
  std::ifstream ds(dpath, std::ios::binary);
  if (!ds) throw std::runtime_error("cannot open " + dpath.string());
  ds.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::int64_t>(ds.tellg());
  if (bytes != f.size() * static_cast<std::int64_t>(sizeof(double)))
    throw std::runtime_error("GFN sample count mismatch");
  ds.seekg(0);
  ds.read(reinterpret_cast<char*>(f.values().data()), bytes);
  if (!f.all_finite()) throw std::runtime_error("GFN contains non-finite samples");
  return f;
}

}  // namespace cellwave
