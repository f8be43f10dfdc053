#pragma once

#include <string>
#include <vector>

#include "mgahhn/matrix.hpp"
#include "mgahhn/optimizer.hpp"

namespace mgahhn {

// Checkpoint file layout (little-endian, bit-exact round trip):
//   magic "MGHH"  u32 version  u64 param_count
//   per param: u64 name_len, name bytes, i32 rows, i32 cols,
//              rows*cols raw float64 values (row-major)
struct CheckpointEntry {
  std::string name;
  Matrix value;
};

void save_checkpoint(const std::string& path,
                     const std::vector<const Parameter*>& params);

std::vector<CheckpointEntry> read_checkpoint(const std::string& path);

// Restores values into existing parameters, matched by name. Every
// parameter must be present in the file with the exact shape.
void load_checkpoint(const std::string& path, std::vector<Parameter*>& params);

}  // namespace mgahhn
