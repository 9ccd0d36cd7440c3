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

#include "pretextrl/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pretextrl/error.hpp"

namespace pretextrl {
namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Bilinear sample at pixel-center coordinates (sx, sy), clamping the
// neighbor lookup to the image.
void sample_bilinear(const RasterImage& img, double sx, double sy,
                     double out[3]) {
  const int w = img.width();
  const int h = img.height();
  sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
  sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(std::floor(sx));
  const int y0 = static_cast<int>(std::floor(sy));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = sx - x0;
  const double fy = sy - y0;
  const Rgb a = img.at(x0, y0);
  const Rgb b = img.at(x1, y0);
  const Rgb c = img.at(x0, y1);
  const Rgb d = img.at(x1, y1);
  for (int ch = 0; ch < 3; ++ch) {
    const double top = a[ch] + (b[ch] - a[ch]) * fx;
    const double bottom = c[ch] + (d[ch] - c[ch]) * fx;
    out[ch] = top + (bottom - top) * fy;
  }
}

}  // namespace

RasterImage::RasterImage(int width, int height)
    : RasterImage(width, height, Rgb{0, 0, 0}) {}

RasterImage::RasterImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw ValidationError("RasterImage: dimensions must be >= 1");
  }
  pixels_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill[0];
    pixels_[i + 1] = fill[1];
    pixels_[i + 2] = fill[2];
  }
}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) {
    throw ValidationError("RasterImage: dimensions must be >= 1");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height * 3) {
    throw ValidationError("RasterImage: buffer length must be width*height*3");
  }
}

RasterImage rotate_quarter(const RasterImage& img, int k) {
  if (k < 0 || k > 3) throw ValidationError("rotate_quarter: k must be 0..3");
  const int w = img.width();
  const int h = img.height();
  if (k == 0) return img;
  RasterImage out = (k % 2 == 0) ? RasterImage(w, h) : RasterImage(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb v = img.at(x, y);
      switch (k) {
        case 1:  // right edge moves to the top
          out.set(y, w - 1 - x, v);
          break;
        case 2:
          out.set(w - 1 - x, h - 1 - y, v);
          break;
        case 3:
          out.set(h - 1 - y, x, v);
          break;
      }
    }
  }
  return out;
}

std::array<int, 2> rotated_bounds(int width, int height, double angle_degrees) {
  const double rad = angle_degrees * std::numbers::pi / 180.0;
  const double c = std::abs(std::cos(rad));
  const double s = std::abs(std::sin(rad));
  // Round away float noise before ceil so exact quarter turns stay exact.
  auto snap_ceil = [](double v) {
    const double r = std::round(v);
    return static_cast<int>(std::abs(v - r) < 1e-9 ? r : std::ceil(v));
  };
  return {snap_ceil(width * c + height * s), snap_ceil(width * s + height * c)};
}

RasterImage rotate_sampled(const RasterImage& img, double angle_degrees,
                           int out_width, int out_height) {
  RasterImage out(out_width, out_height);
  const double rad = angle_degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double src_cx = (img.width() - 1) / 2.0;
  const double src_cy = (img.height() - 1) / 2.0;
  const double dst_cx = (out_width - 1) / 2.0;
  const double dst_cy = (out_height - 1) / 2.0;
  const double max_x = img.width() - 0.5;
  const double max_y = img.height() - 0.5;
  double rgb[3];
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      // Inverse of the counterclockwise map in y-down coordinates:
      //   ox = c*dx + s*dy, oy = -s*dx + c*dy
      const double ox = x - dst_cx;
      const double oy = y - dst_cy;
      const double sx = c * ox - s * oy + src_cx;
      const double sy = s * ox + c * oy + src_cy;
      if (sx < -0.5 || sy < -0.5 || sx > max_x || sy > max_y) continue;
      sample_bilinear(img, sx, sy, rgb);
      out.set(x, y, {to_byte(rgb[0]), to_byte(rgb[1]), to_byte(rgb[2])});
    }
  }
  return out;
}

RasterImage rotate_degrees(const RasterImage& img, int angle) {
  if (angle < 0 || angle >= 360 || angle % 45 != 0) {
    throw ValidationError("rotate_degrees: angle must be one of 0,45,...,315, got " +
                          std::to_string(angle));
  }
  if (angle % 90 == 0) return rotate_quarter(img, angle / 90);
  const auto [w, h] = rotated_bounds(img.width(), img.height(), angle);
  return rotate_sampled(img, angle, w, h);
}

RasterImage crop(const RasterImage& img, int x, int y, int width, int height) {
  if (x < 0 || y < 0 || width < 1 || height < 1 || x + width > img.width() ||
      y + height > img.height()) {
    throw ValidationError("crop: window outside image");
  }
  RasterImage out(width, height);
  const auto src = img.pixels();
  auto dst = out.mutable_pixels();
  const std::size_t row_bytes = static_cast<std::size_t>(width) * 3;
  for (int r = 0; r < height; ++r) {
    const std::size_t from = (static_cast<std::size_t>(y + r) * img.width() + x) * 3;
    std::copy_n(src.begin() + from, row_bytes, dst.begin() + r * row_bytes);
  }
  return out;
}

std::vector<RasterImage> partition_grid(const RasterImage& img, int n) {
  if (n < 1) throw ValidationError("partition_grid: grid order must be >= 1");
  if (img.width() < n || img.height() < n) {
    throw ValidationError("partition_grid: image " + std::to_string(img.width()) +
                          "x" + std::to_string(img.height()) +
                          " smaller than grid order " + std::to_string(n));
  }
  const int cw = img.width() / n;
  const int ch = img.height() / n;
  std::vector<RasterImage> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) cells.push_back(crop(img, c * cw, r * ch, cw, ch));
  }
  return cells;
}

RasterImage compose_grid(std::span<const RasterImage> cells, int n) {
  if (n < 1 || cells.size() != static_cast<std::size_t>(n) * n) {
    throw ValidationError("compose_grid: expected n*n cells");
  }
  const int cw = cells[0].width();
  const int ch = cells[0].height();
  for (const auto& cell : cells) {
    if (cell.width() != cw || cell.height() != ch) {
      throw ValidationError("compose_grid: cells must share dimensions");
    }
  }
  RasterImage out(cw * n, ch * n);
  auto dst = out.mutable_pixels();
  const std::size_t row_bytes = static_cast<std::size_t>(cw) * 3;
  for (int i = 0; i < n * n; ++i) {
    const int ox = (i % n) * cw;
    const int oy = (i / n) * ch;
    const auto src = cells[i].pixels();
    for (int r = 0; r < ch; ++r) {
      const std::size_t to = (static_cast<std::size_t>(oy + r) * out.width() + ox) * 3;
      std::copy_n(src.begin() + r * row_bytes, row_bytes, dst.begin() + to);
    }
  }
  return out;
}

RasterImage extract_cell(const RasterImage& img, int n, int row, int col) {
  if (n < 1 || row < 1 || row > n || col < 1 || col > n) {
    throw ValidationError("extract_cell: (" + std::to_string(row) + "," +
                          std::to_string(col) + ") outside " + std::to_string(n) +
                          "x" + std::to_string(n) + " grid");
  }
  if (img.width() < n || img.height() < n) {
    throw ValidationError("extract_cell: image smaller than grid order");
  }
  const int cw = img.width() / n;
  const int ch = img.height() / n;
  return crop(img, (col - 1) * cw, (row - 1) * ch, cw, ch);
}

RasterImage resize_bilinear(const RasterImage& img, int width, int height) {
  if (width < 1 || height < 1) {
    throw ValidationError("resize_bilinear: dimensions must be >= 1");
  }
  if (width == img.width() && height == img.height()) return img;
  RasterImage out(width, height);
  const double scale_x = static_cast<double>(img.width()) / width;
  const double scale_y = static_cast<double>(img.height()) / height;
  double rgb[3];
  for (int y = 0; y < height; ++y) {
    const double sy = (y + 0.5) * scale_y - 0.5;
    for (int x = 0; x < width; ++x) {
      const double sx = (x + 0.5) * scale_x - 0.5;
      sample_bilinear(img, sx, sy, rgb);
      out.set(x, y, {to_byte(rgb[0]), to_byte(rgb[1]), to_byte(rgb[2])});
    }
  }
  return out;
}

}  // namespace pretextrl
