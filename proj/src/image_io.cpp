// Copyright 2026 The pretextrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pretextrl/image_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "pretextrl/error.hpp"

namespace pretextrl {
namespace fs = std::filesystem;

RasterImage read_png(const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("read_png: " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("read_png: " + path.string() + ": " + msg);
  }
  return RasterImage(static_cast<int>(image.width), static_cast<int>(image.height),
                     std::move(buffer));
}

void write_png(const RasterImage& img, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.pixels().data(), 0,
                               nullptr)) {
    throw IoError("write_png: " + path.string() + ": " + image.message);
  }
}

RasterImage read_raw(const fs::path& path) {
  fs::path dims_path = path;
  dims_path += ".dims";
  std::ifstream dims(dims_path);
  int w = 0;
  int h = 0;
  if (!(dims >> w >> h)) throw IoError("read_raw: cannot read " + dims_path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_raw: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() != static_cast<std::size_t>(w) * h * 3) {
    throw IoError("read_raw: " + path.string() + " has " + std::to_string(bytes.size()) +
                  " bytes, expected " + std::to_string(static_cast<std::size_t>(w) * h * 3));
  }
  return RasterImage(w, h, std::move(bytes));
}

void write_raw(const RasterImage& img, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("write_raw: cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.pixels().size()));
  fs::path dims_path = path;
  dims_path += ".dims";
  std::ofstream dims(dims_path, std::ios::trunc);
  dims << img.width() << ' ' << img.height() << '\n';
  if (!out || !dims) throw IoError("write_raw: write failed for " + path.string());
}

RasterImage read_image(const fs::path& path) {
  const auto ext = path.extension();
  if (ext == ".png") return read_png(path);
  if (ext == ".rgb") return read_raw(path);
  throw IoError("read_image: unsupported extension: " + path.string());
}

void write_image(const RasterImage& img, const fs::path& path) {
  const auto ext = path.extension();
  if (ext == ".png") return write_png(img, path);
  if (ext == ".rgb") return write_raw(img, path);
  throw IoError("write_image: unsupported extension: " + path.string());
}

}  // namespace pretextrl
