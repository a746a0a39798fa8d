#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cellwave/gfn.hpp"
#include "doctest.h"

using namespace cellwave;
namespace fs = std::filesystem;

TEST_CASE("gfn round trip is exact and byte stable") {
  fs::path dir = fs::temp_directory_path() / "cellwave_gfn_test";
  fs::create_directories(dir);
  GridFunction f = GridFunction::sample(Box({-1.0, 0.0}, {1.0, 1.0}), 5, [](const std::vector<double>& x) {
    return std::sin(x[0]) * x[1] + 0.25;
  });
  std::string path = (dir / "f.gfn").string();
  write_gfn(f, path);
  GridFunction g = read_gfn(path);
  CHECK(g.dim() == f.dim());
  CHECK(g.resolution() == f.resolution());
  for (std::int64_t i = 0; i < f.size(); ++i) CHECK(g[i] == f[i]);

  // write-read-write is byte stable
  std::string path2 = (dir / "g.gfn").string();
  write_gfn(g, path2);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  auto bin_of = [](std::string p) {
    p.replace(p.size() - 4, 4, ".bin");
    return p;
  };
  CHECK(slurp(bin_of(path)) == slurp(bin_of(path2)));
  fs::remove_all(dir);
}

TEST_CASE("gfn reader rejects sample-count mismatch") {
  fs::path dir = fs::temp_directory_path() / "cellwave_gfn_bad";
  fs::create_directories(dir);
  GridFunction f(Box::unit(1), 3);
  std::string path = (dir / "f.gfn").string();
  write_gfn(f, path);
  // truncate the payload
  fs::resize_file(dir / "f.bin", 8);
  CHECK_THROWS(read_gfn(path));
  fs::remove_all(dir);
}
