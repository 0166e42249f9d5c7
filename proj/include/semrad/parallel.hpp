// ======================================================================== //
// Copyright 2026 the semrad authors                                        //
//                                                                          //
// Licensed under the Apache License, Version 2.0 (the "License");          //
// you may not use this file except in compliance with the License.         //
// You may obtain a copy of the License at                                  //
//                                                                          //
//     http://www.apache.org/licenses/LICENSE-2.0                           //
//                                                                          //
// Unless required by applicable law or agreed to in writing, software      //
// distributed under the License is distributed on an "AS IS" BASIS,        //
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. //
// See the License for the specific language governing permissions and      //
// limitations under the License.                                           //
// ======================================================================== //

#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace semrad {

struct TileRect {
  int x0, y0, x1, y1;  // half-open
};

// 0 means "use hardware concurrency"; the SEMRAD_WORKERS environment
// variable is the fallback when the caller passes -1 (unset).
inline int resolve_workers(int requested) {
  if (requested < 0) {
    if (const char* env = std::getenv("SEMRAD_WORKERS")) requested = std::atoi(env);
    else requested = 0;
  }
  if (requested <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    requested = hw > 0 ? int(hw) : 1;
  }
  return requested;
}

// Runs fn over 32x32 pixel tiles. Workers pull tiles from a shared counter
// and write disjoint buffer regions; per-pixel work must not depend on the
// tile schedule, which makes output independent of the worker count.
template <typename Fn>
void parallel_tiles(int width, int height, int workers, Fn&& fn) {
  constexpr int kTile = 32;
  const int tiles_x = (width + kTile - 1) / kTile;
  const int tiles_y = (height + kTile - 1) / kTile;
  const int tile_count = tiles_x * tiles_y;
  workers = resolve_workers(workers);

  auto run_tile = [&](int index) {
    const int tx = index % tiles_x;
    const int ty = index / tiles_x;
    TileRect r;
    r.x0 = tx * kTile;
    r.y0 = ty * kTile;
    r.x1 = std::min(r.x0 + kTile, width);
    r.y1 = std::min(r.y0 + kTile, height);
    fn(r);
  };

  if (workers == 1 || tile_count == 1) {
    for (int i = 0; i < tile_count; ++i) run_tile(i);
    return;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= tile_count) break;
        run_tile(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace semrad
