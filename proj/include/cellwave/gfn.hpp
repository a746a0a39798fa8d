#ifndef CELLWAVE_GFN_HPP
#define CELLWAVE_GFN_HPP

#include <string>

#include "cellwave/grid.hpp"

namespace cellwave {

// GFN on-disk format: a UTF-8 JSON manifest
//   {"n":int, "bbox":[[lo...],[hi...]], "J":int, "dims":[...], "data":"<path>"}
// next to a raw binary file of IEEE-754 binary64 little-endian samples in
// row-major order. Readers reject dimension / sample-count mismatches.
void write_gfn(const GridFunction& f, const std::string& manifest_path);
GridFunction read_gfn(const std::string& manifest_path);

}  // namespace cellwave

#endif
