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

#ifndef PRETEXTRL_IMAGE_HPP_
#define PRETEXTRL_IMAGE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace pretextrl {

using Rgb = std::array<std::uint8_t, 3>;

// Owned 8-bit RGB raster, row-major, 3 bytes per pixel.
class RasterImage {
 public:
  // Black image. Throws ValidationError if either dimension is zero.
  RasterImage(int width, int height);
  RasterImage(int width, int height, Rgb fill);
  // Takes ownership of a buffer of exactly width*height*3 bytes.
  RasterImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> mutable_pixels() { return pixels_; }

  Rgb at(int x, int y) const {
    const std::size_t i = offset(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb value) {
    const std::size_t i = offset(x, y);
    pixels_[i] = value[0];
    pixels_[i + 1] = value[1];
    pixels_[i + 2] = value[2];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

// Counterclockwise rotation by 90*k degrees, k in 0..3. Exact index remap.
RasterImage rotate_quarter(const RasterImage& img, int k);

// Counterclockwise rotation by an angle on the 45 degree lattice. Multiples
// of 90 delegate to rotate_quarter; odd multiples of 45 expand the canvas to
// the rotated bounding box, sample bilinearly and fill uncovered pixels
// black. Throws ValidationError for angles off the lattice.
RasterImage rotate_degrees(const RasterImage& img, int angle);

// Bilinear rotation about the image center onto a canvas of the given size.
// Exposed so the lattice path can be cross-checked against rotate_quarter.
RasterImage rotate_sampled(const RasterImage& img, double angle_degrees,
                           int out_width, int out_height);

// Canvas size for a rotation by angle degrees: ceil(W|cos| + H|sin|) etc.
std::array<int, 2> rotated_bounds(int width, int height, double angle_degrees);

// n*n cells in row-major order. The bottom/right remainder that does not
// divide evenly by n is cropped away first.
std::vector<RasterImage> partition_grid(const RasterImage& img, int n);

// Inverse of partition_grid: tiles n*n equally sized cells row-major.
RasterImage compose_grid(std::span<const RasterImage> cells, int n);

// Cell at 1-based (row, col) of the n*n grid.
RasterImage extract_cell(const RasterImage& img, int n, int row, int col);

RasterImage crop(const RasterImage& img, int x, int y, int width, int height);

// Half-pixel-center bilinear resampling with edge clamping.
RasterImage resize_bilinear(const RasterImage& img, int width, int height);

}  // namespace pretextrl

#endif  // PRETEXTRL_IMAGE_HPP_
