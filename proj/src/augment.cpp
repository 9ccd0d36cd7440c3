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

#include "pretextrl/augment.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pretextrl/error.hpp"

namespace pretextrl {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr int kCropAttempts = 10;

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

void check_range(const Range& r, const char* what) {
  if (!(r.lo <= r.hi)) throw ValidationError(std::string(what) + ": lo > hi");
}

// Float RGB planes so jitter steps compose without intermediate rounding.
struct FloatImage {
  int w;
  int h;
  std::vector<double> v;
};

FloatImage to_float(const RasterImage& img) {
  FloatImage f{img.width(), img.height(), {}};
  f.v.assign(img.pixels().begin(), img.pixels().end());
  return f;
}

RasterImage to_raster(const FloatImage& f) {
  std::vector<std::uint8_t> px(f.v.size());
  std::transform(f.v.begin(), f.v.end(), px.begin(), to_byte);
  return RasterImage(f.w, f.h, std::move(px));
}

void clamp_all(FloatImage& f) {
  for (double& x : f.v) x = std::clamp(x, 0.0, 255.0);
}

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  v = mx;
  s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    h = 0.0;
  } else if (mx == r) {
    h = std::fmod((g - b) / d + 6.0, 6.0) / 6.0;
  } else if (mx == g) {
    h = ((b - r) / d + 2.0) / 6.0;
  } else {
    h = ((r - g) / d + 4.0) / 6.0;
  }
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
  const double hh = h * 6.0;
  const int sector = static_cast<int>(std::floor(hh)) % 6;
  const double f = hh - std::floor(hh);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
}

RasterImage color_jitter(const RasterImage& img, const ColorJitter& p, SeedStream& rng) {
  const double brightness = rng.uniform(p.brightness.lo, p.brightness.hi);
  const double contrast = rng.uniform(p.contrast.lo, p.contrast.hi);
  const double saturation = rng.uniform(p.saturation.lo, p.saturation.hi);
  const double hue = rng.uniform(p.hue.lo, p.hue.hi);

  FloatImage f = to_float(img);
  for (double& x : f.v) x *= brightness;
  clamp_all(f);

  double mean = 0.0;
  for (std::size_t i = 0; i < f.v.size(); i += 3) mean += luma(f.v[i], f.v[i + 1], f.v[i + 2]);
  mean /= static_cast<double>(f.v.size() / 3);
  for (double& x : f.v) x = (x - mean) * contrast + mean;
  clamp_all(f);

  for (std::size_t i = 0; i < f.v.size(); i += 3) {
    const double g = luma(f.v[i], f.v[i + 1], f.v[i + 2]);
    for (int c = 0; c < 3; ++c) f.v[i + c] = (f.v[i + c] - g) * saturation + g;
  }
  clamp_all(f);

  if (hue != 0.0) {
    for (std::size_t i = 0; i < f.v.size(); i += 3) {
      double h, s, v;
      rgb_to_hsv(f.v[i], f.v[i + 1], f.v[i + 2], h, s, v);
      h = h + hue;
      h -= std::floor(h);
      hsv_to_rgb(h, s, v, f.v[i], f.v[i + 1], f.v[i + 2]);
    }
  }
  return to_raster(f);
}

RasterImage grayscale(const RasterImage& img) {
  RasterImage out = img;
  auto px = out.mutable_pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    const std::uint8_t l = to_byte(luma(px[i], px[i + 1], px[i + 2]));
    px[i] = px[i + 1] = px[i + 2] = l;
  }
  return out;
}

RasterImage gaussian_blur(const RasterImage& img, const GaussianBlur& p, SeedStream& rng) {
  const double sigma = rng.uniform(p.sigma.lo, p.sigma.hi);
  const int size = blur_kernel_size(img.width(), img.height());
  if (size == 1) return img;
  const int radius = size / 2;
  std::vector<double> kernel(size);
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - radius;
    kernel[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    total += kernel[i];
  }
  for (double& k : kernel) k /= total;

  const int w = img.width();
  const int h = img.height();
  const auto src = img.pixels();
  std::vector<double> tmp(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int k = 0; k < size; ++k) {
          const int sx = std::clamp(x + k - radius, 0, w - 1);
          acc += kernel[k] * src[(static_cast<std::size_t>(y) * w + sx) * 3 + c];
        }
        tmp[(static_cast<std::size_t>(y) * w + x) * 3 + c] = acc;
      }
    }
  }
  FloatImage out{w, h, std::vector<double>(src.size())};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int k = 0; k < size; ++k) {
          const int sy = std::clamp(y + k - radius, 0, h - 1);
          acc += kernel[k] * tmp[(static_cast<std::size_t>(sy) * w + x) * 3 + c];
        }
        out.v[(static_cast<std::size_t>(y) * w + x) * 3 + c] = acc;
      }
    }
  }
  return to_raster(out);
}

RasterImage horizontal_flip(const RasterImage& img) {
  RasterImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.set(img.width() - 1 - x, y, img.at(x, y));
  }
  return out;
}

RasterImage solarize(const RasterImage& img, const Solarize& p) {
  RasterImage out = img;
  for (auto& v : out.mutable_pixels()) {
    if (v >= p.threshold) v = static_cast<std::uint8_t>(255 - v);
  }
  return out;
}

}  // namespace

std::string_view augmentation_name(const AugmentationKind& kind) {
  return std::visit(
      Overloaded{[](const ColorJitter&) { return std::string_view("color_jitter"); },
                 [](const Grayscale&) { return std::string_view("grayscale"); },
                 [](const GaussianBlur&) { return std::string_view("gaussian_blur"); },
                 [](const HorizontalFlip&) { return std::string_view("horizontal_flip"); },
                 [](const RandomResizedCrop&) {
                   return std::string_view("random_resized_crop");
                 },
                 [](const Solarize&) { return std::string_view("solarize"); }},
      kind);
}

void validate(const AugmentationKind& kind) {
  std::visit(Overloaded{
                 [](const ColorJitter& p) {
                   check_range(p.brightness, "brightness");
                   check_range(p.contrast, "contrast");
                   check_range(p.saturation, "saturation");
                   check_range(p.hue, "hue");
                   if (p.brightness.lo < 0 || p.contrast.lo < 0 || p.saturation.lo < 0) {
                     throw ValidationError("color_jitter: factors must be nonnegative");
                   }
                   if (p.hue.lo < -0.5 || p.hue.hi > 0.5) {
                     throw ValidationError("color_jitter: hue shift must lie in [-0.5,0.5]");
                   }
                 },
                 [](const GaussianBlur& p) {
                   check_range(p.sigma, "sigma");
                   if (!(p.sigma.lo > 0.0)) {
                     throw ValidationError("gaussian_blur: sigma range must be positive");
                   }
                 },
                 [](const RandomResizedCrop& p) {
                   if (!(p.scale.lo > 0.0 && p.scale.lo <= p.scale.hi && p.scale.hi <= 1.0)) {
                     throw ValidationError(
                         "random_resized_crop: scale must satisfy 0 < min <= max <= 1");
                   }
                   check_range(p.ratio, "ratio");
                   if (!(p.ratio.lo > 0.0)) {
                     throw ValidationError("random_resized_crop: ratio must be positive");
                   }
                 },
                 [](const Solarize& p) {
                   if (p.threshold < 0 || p.threshold > 256) {
                     throw ValidationError("solarize: threshold must be in [0,256]");
                   }
                 },
                 [](const auto&) {}},
             kind);
}

int blur_kernel_size(int width, int height) {
  const double target = std::min(width, height) / 10.0;
  // Nearest odd integer; ties round up.
  int k = 2 * static_cast<int>(std::floor((target - 1.0) / 2.0 + 0.5)) + 1;
  return std::max(k, 1);
}

CropWindow sample_crop_window(int width, int height, const RandomResizedCrop& p,
                              SeedStream& rng) {
  const double area = static_cast<double>(width) * height;
  const double log_lo = std::log(p.ratio.lo);
  const double log_hi = std::log(p.ratio.hi);
  for (int attempt = 0; attempt < kCropAttempts; ++attempt) {
    const double target_area = area * rng.uniform(p.scale.lo, p.scale.hi);
    const double aspect = std::exp(rng.uniform(log_lo, log_hi));
    const int w = static_cast<int>(std::lround(std::sqrt(target_area * aspect)));
    const int h = static_cast<int>(std::lround(std::sqrt(target_area / aspect)));
    if (w >= 1 && h >= 1 && w <= width && h <= height) {
      const int x = static_cast<int>(rng.uniform_index(width - w + 1));
      const int y = static_cast<int>(rng.uniform_index(height - h + 1));
      return {x, y, w, h};
    }
  }
  // Center crop at the closest admissible aspect ratio.
  const double in_ratio = static_cast<double>(width) / height;
  int w = width;
  int h = height;
  if (in_ratio < p.ratio.lo) {
    h = std::max(1, static_cast<int>(std::lround(width / p.ratio.lo)));
  } else if (in_ratio > p.ratio.hi) {
    w = std::max(1, static_cast<int>(std::lround(height * p.ratio.hi)));
  }
  w = std::min(w, width);
  h = std::min(h, height);
  return {(width - w) / 2, (height - h) / 2, w, h};
}

RasterImage apply_augmentation(const RasterImage& img, const AugmentationKind& kind,
                               SeedStream& rng) {
  validate(kind);
  return std::visit(
      Overloaded{
          [&](const ColorJitter& p) { return color_jitter(img, p, rng); },
          [&](const Grayscale&) { return grayscale(img); },
          [&](const GaussianBlur& p) { return gaussian_blur(img, p, rng); },
          [&](const HorizontalFlip&) { return horizontal_flip(img); },
          [&](const RandomResizedCrop& p) {
            const CropWindow win = sample_crop_window(img.width(), img.height(), p, rng);
            return resize_bilinear(crop(img, win.x, win.y, win.width, win.height),
                                   img.width(), img.height());
          },
          [&](const Solarize& p) { return solarize(img, p); }},
      kind);
}

}  // namespace pretextrl
