#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace robinlab {

struct RunConfig {
  int digits = 50;
  int max_digits = 2000;
  std::size_t segment_size = std::size_t{1} << 20;  // power of two
  unsigned threads = 0;  // 0: use available parallelism
  enum class Format { Text, Json, Csv } format = Format::Text;
  bool slow = false;
  uint64_t seed = 12345;
};

// Dispatches one invocation. Exit codes: 0 success, 1 audit failure,
// 2 usage error, 3 capacity/precision error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace robinlab
