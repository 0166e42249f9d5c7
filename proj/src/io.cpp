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

#include "semrad/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <png.h>

namespace semrad {

static_assert(std::endian::native == std::endian::little, "pack and PFM writers assume a little-endian host");

namespace fs = std::filesystem;

void atomic_write(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw IoError("short write: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

// ---------------------------------------------------------------- PFM ---

void write_pfm(const fs::path& path, const ImageF& img) {
  const bool color = img.channels == 3;
  const int stack = color ? 1 : img.channels;  // non-3ch stored as Pf stack
  const int W = img.width, H = img.height * stack;

  std::ostringstream out(std::ios::binary);
  out << (color ? "PF" : "Pf") << "\n" << W << " " << H << "\n" << "-1.0" << "\n";

  // rows bottom-to-top over the stacked layout
  std::vector<float> row(size_t(W) * (color ? 3 : 1));
  for (int y = H - 1; y >= 0; --y) {
    const int block = y / img.height;       // channel for stacked layout
    const int yy = y % img.height;
    if (color) {
      std::memcpy(row.data(), img.pixel(0, yy), row.size() * sizeof(float));
    } else {
      const int c = block;
      for (int x = 0; x < W; ++x) row[x] = img.at(x, yy, c);
    }
    out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * sizeof(float)));
  }
  atomic_write(path, out.str());
}

ImageF read_pfm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open PFM: " + path.string());
  std::string magic;
  int W = 0, H = 0;
  float scale = 0.0f;
  in >> magic >> W >> H >> scale;
  if ((magic != "PF" && magic != "Pf") || W <= 0 || H <= 0)
    throw IoError("not a PFM file: " + path.string());
  if (scale >= 0.0f) throw IoError("big-endian PFM unsupported: " + path.string());
  in.get();  // single whitespace after the scale
  const int C = magic == "PF" ? 3 : 1;
  ImageF img(W, H, C);
  std::vector<float> row(size_t(W) * C);
  for (int y = H - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size() * sizeof(float)));
    if (!in) throw IoError("truncated PFM: " + path.string());
    std::memcpy(img.pixel(0, y), row.data(), row.size() * sizeof(float));
  }
  return img;
}

ImageF unstack_channels(const ImageF& stacked, int channels) {
  if (stacked.channels != 1 || stacked.height % channels != 0)
    throw IoError("image is not a channel stack");
  const int H = stacked.height / channels;
  ImageF out(stacked.width, H, channels);
  for (int c = 0; c < channels; ++c)
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < stacked.width; ++x) out.at(x, y, c) = stacked.at(x, y + c * H);
  return out;
}

// ---------------------------------------------------------------- PNG ---

void write_png(const fs::path& path, const ImageF& img) {
  if (img.channels != 3) throw IoError("PNG writer expects a 3-channel image");

  png_struct* png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng init failed");
  png_info* info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng info init failed");
  }

  std::string bytes;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng write failed: " + path.string());
  }
  png_set_write_fn(
      png, &bytes,
      [](png_struct* p, png_byte* data, size_t len) {
        auto* s = static_cast<std::string*>(png_get_io_ptr(p));
        s->append(reinterpret_cast<const char*>(data), len);
      },
      [](png_struct*) {});

  png_set_IHDR(png, info, png_uint_32(img.width), png_uint_32(img.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<png_byte> row(size_t(img.width) * 3);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) {
        const float v = std::clamp(img.at(x, y, c), 0.0f, 1.0f);
        row[size_t(x) * 3 + c] = png_byte(std::lround(v * 255.0f));
      }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  atomic_write(path, bytes);
}

ImageF read_png(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open PNG: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();

  png_struct* png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng init failed");
  png_info* info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng info init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng read failed: " + path.string());
  }

  struct Cursor {
    const std::string* bytes;
    size_t at;
  } cursor{&bytes, 0};
  png_set_read_fn(png, &cursor, [](png_struct* p, png_byte* data, size_t len) {
    auto* c = static_cast<Cursor*>(png_get_io_ptr(p));
    if (c->at + len > c->bytes->size()) png_error(p, "unexpected end of PNG stream");
    std::memcpy(data, c->bytes->data() + c->at, len);
    c->at += len;
  });

  png_read_info(png, info);
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  const int W = int(png_get_image_width(png, info));
  const int H = int(png_get_image_height(png, info));

  ImageF img(W, H, 3);
  std::vector<png_byte> row(size_t(W) * 3);
  for (int y = 0; y < H; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < W; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = float(row[size_t(x) * 3 + c]) / 255.0f;
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

// --------------------------------------------------------------- pack ---

namespace {

constexpr char kPackMagic[4] = {'S', 'R', 'A', 'D'};
constexpr uint32_t kPackVersion = 1;

template <typename T>
void put(std::string& out, const T& v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

void put_string(std::string& out, const std::string& s) {
  put(out, uint16_t(s.size()));
  out.append(s);
}

void put_vec3(std::string& out, const Vec3& v) {
  put(out, v.x);
  put(out, v.y);
  put(out, v.z);
}

struct Reader {
  const std::string& bytes;
  size_t at = 0;

  template <typename T>
  T get() {
    if (at + sizeof(T) > bytes.size()) throw IoError("truncated pack file");
    T v;
    std::memcpy(&v, bytes.data() + at, sizeof(T));
    at += sizeof(T);
    return v;
  }
  std::string get_string() {
    const uint16_t n = get<uint16_t>();
    if (at + n > bytes.size()) throw IoError("truncated pack file");
    std::string s = bytes.substr(at, n);
    at += n;
    return s;
  }
  Vec3 get_vec3() {
    Vec3 v;
    v.x = get<float>();
    v.y = get<float>();
    v.z = get<float>();
    return v;
  }
};

}  // namespace

void save_pack(const fs::path& path, const SemanticScene& scene) {
  std::string out;
  out.append(kPackMagic, 4);
  put(out, kPackVersion);
  put(out, uint32_t(scene.label_bits.to_ulong()));
  put(out, scene.t_near);
  put(out, scene.t_far);
  put_vec3(out, scene.bbox.lo);
  put_vec3(out, scene.bbox.hi);
  put(out, scene.body.smoothing);

  put(out, uint32_t(scene.skeleton.bones.size()));
  for (const Bone& b : scene.skeleton.bones) {
    put_string(out, b.name);
    put(out, int32_t(b.parent));
    put_vec3(out, b.capsule.a);
    put_vec3(out, b.capsule.b);
    put(out, b.capsule.radius);
  }

  for (const Part& part : scene.parts) {
    put_string(out, part.name);
    put(out, uint8_t(part.enabled ? 1 : 0));
    put(out, part.density_scale);
    put(out, uint32_t(part.plane.resolution));
    put(out, uint32_t(part.plane.channels));
    put_vec3(out, part.plane.bbox.lo);
    put_vec3(out, part.plane.bbox.hi);
    for (const auto& plane : part.plane.planes)
      out.append(reinterpret_cast<const char*>(plane.data()), plane.size() * sizeof(float));
  }
  atomic_write(path, out);
}

SemanticScene load_pack(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open pack: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  Reader r{bytes};

  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPackMagic, 4) != 0)
    throw IoError("not a scene pack: " + path.string());
  r.at = 4;
  const uint32_t version = r.get<uint32_t>();
  if (version != kPackVersion) throw IoError("unsupported pack version");

  SemanticScene scene;
  scene.label_bits = std::bitset<kLabelBits>(r.get<uint32_t>());
  scene.t_near = r.get<float>();
  scene.t_far = r.get<float>();
  scene.bbox.lo = r.get_vec3();
  scene.bbox.hi = r.get_vec3();
  scene.body.smoothing = r.get<float>();

  const uint32_t bone_count = r.get<uint32_t>();
  for (uint32_t i = 0; i < bone_count; ++i) {
    Bone b;
    b.name = r.get_string();
    b.parent = r.get<int32_t>();
    b.capsule.a = r.get_vec3();
    b.capsule.b = r.get_vec3();
    b.capsule.radius = r.get<float>();
    scene.skeleton.bones.push_back(b);
    scene.body.bones.push_back(b.capsule);
  }

  for (int k = 0; k < kPartCount; ++k) {
    Part& part = scene.parts[k];
    part.name = r.get_string();
    part.enabled = r.get<uint8_t>() != 0;
    part.density_scale = r.get<float>();
    const uint32_t res = r.get<uint32_t>();
    const uint32_t ch = r.get<uint32_t>();
    Aabb box;
    box.lo = r.get_vec3();
    box.hi = r.get_vec3();
    part.plane = TriPlane(int(res), int(ch), box);
    const size_t plane_bytes = size_t(res) * res * ch * sizeof(float);
    for (auto& plane : part.plane.planes) {
      if (r.at + plane_bytes > bytes.size()) throw IoError("truncated pack file");
      std::memcpy(plane.data(), bytes.data() + r.at, plane_bytes);
      r.at += plane_bytes;
    }
  }
  scene.validate();
  return scene;
}

// ------------------------------------------------------------ buffers ---

void save_buffers(const fs::path& dir, const RenderBuffers& buffers) {
  fs::create_directories(dir);
  write_png(dir / "color.png", buffers.color);
  write_pfm(dir / "depth.pfm", buffers.depth);
  write_pfm(dir / "normal.pfm", buffers.normal);
  write_pfm(dir / "semantic.pfm", buffers.semantic);
  write_pfm(dir / "opacity.pfm", buffers.opacity);
}

RenderBuffers load_buffers(const fs::path& dir) {
  RenderBuffers b;
  b.depth = read_pfm(dir / "depth.pfm");
  b.normal = read_pfm(dir / "normal.pfm");
  b.semantic = unstack_channels(read_pfm(dir / "semantic.pfm"), kPartCount);
  b.opacity = read_pfm(dir / "opacity.pfm");
  b.color = read_png(dir / "color.png");  // 8-bit quantized
  return b;
}

}  // namespace semrad
