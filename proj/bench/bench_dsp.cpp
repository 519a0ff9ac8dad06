// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernel vs. OpenMP kernel on random instances.
//   seqpart_bench [repeats] [dim]

#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "seqpart/bench.hpp"

int main(int argc, char** argv) {
  using namespace seqpart;
  const std::size_t repeats = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
  const std::size_t dim = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 144;
  if (repeats == 0 || dim == 0) {
    std::fprintf(stderr, "usage: seqpart_bench [repeats>0] [dim>0]\n");
    return 1;
  }
  std::printf("threads=%d repeats=%zu dim=%zu\n", omp_get_max_threads(),
              repeats, dim);
  std::printf("%6s %3s %12s %12s %12s %8s\n", "n", "m", "serial_s",
              "parallel_s", "cost_only_s", "speedup");
  for (std::size_t n : {250, 500, 1000, 2000}) {
    for (std::size_t m : {2, 4}) {
      TimingOptions serial{Execution::kSerial, false, 1};
      TimingOptions parallel{Execution::kParallel, false, 1};
      TimingOptions rolling{Execution::kParallel, true, 1};
      const double ts = median_align_seconds(n, m, dim, repeats, serial);
      const double tp = median_align_seconds(n, m, dim, repeats, parallel);
      const double tc = median_align_seconds(n, m, dim, repeats, rolling);
      std::printf("%6zu %3zu %12.5f %12.5f %12.5f %8.2f\n", n, m, ts, tp, tc,
                  ts / tp);
    }
  }
  return 0;
}
