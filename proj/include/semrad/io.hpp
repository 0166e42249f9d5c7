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

#include <filesystem>
#include <string>

#include "semrad/render.hpp"

namespace semrad {

// All writers are atomic: content goes to a temp file in the target
// directory which is then renamed over the destination.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

// PFM, float32 little-endian (negative scale), rows bottom-to-top.
// 1-channel images use "Pf", 3-channel "PF". Images with another channel
// count are stored as a "Pf" stack: channel k occupies rows
// [k*height, (k+1)*height).
void write_pfm(const std::filesystem::path& path, const ImageF& img);
ImageF read_pfm(const std::filesystem::path& path);

// Reverses the channel stacking of write_pfm for a known channel count.
ImageF unstack_channels(const ImageF& stacked, int channels);

// 8-bit RGB PNG; values clamped from [0, 1].
void write_png(const std::filesystem::path& path, const ImageF& img);
ImageF read_png(const std::filesystem::path& path);

// Baked scene pack: magic "SRAD", little-endian, version 1.
void save_pack(const std::filesystem::path& path, const SemanticScene& scene);
SemanticScene load_pack(const std::filesystem::path& path);

// Standard buffer layout of one render:
//   color.png, depth.pfm, normal.pfm, semantic.pfm (stacked), opacity.pfm
void save_buffers(const std::filesystem::path& dir, const RenderBuffers& buffers);
RenderBuffers load_buffers(const std::filesystem::path& dir);

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace semrad
