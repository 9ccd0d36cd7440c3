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

#ifndef PRETEXTRL_AUGMENT_HPP_
#define PRETEXTRL_AUGMENT_HPP_

#include <string_view>
#include <variant>

#include "pretextrl/image.hpp"
#include "pretextrl/seed.hpp"

namespace pretextrl {

struct Range {
  double lo;
  double hi;
};

// Brightness, contrast and saturation are multiplicative factors; hue is a
// shift in fractions of the hue circle. Applied in that fixed order.
struct ColorJitter {
  Range brightness{0.6, 1.4};
  Range contrast{0.6, 1.4};
  Range saturation{0.6, 1.4};
  Range hue{-0.1, 0.1};
};

// ITU-R 601 luma, replicated across channels.
struct Grayscale {};

struct GaussianBlur {
  Range sigma{0.1, 2.0};
};

struct HorizontalFlip {};

// Crops a window of area fraction in `scale` and aspect ratio in `ratio`,
// then resizes back to the input dimensions.
struct RandomResizedCrop {
  Range scale{0.08, 1.0};
  Range ratio{3.0 / 4.0, 4.0 / 3.0};
};

// Inverts every channel value >= threshold.
struct Solarize {
  int threshold = 128;
};

using AugmentationKind = std::variant<ColorJitter, Grayscale, GaussianBlur,
                                      HorizontalFlip, RandomResizedCrop, Solarize>;

std::string_view augmentation_name(const AugmentationKind& kind);

// Throws ValidationError when the parameter block is out of domain.
void validate(const AugmentationKind& kind);

// Always applies the augmentation; probability gating is the caller's job.
// Pure function of (img, kind, rng state).
RasterImage apply_augmentation(const RasterImage& img, const AugmentationKind& kind,
                               SeedStream& rng);

// Kernel size used by GaussianBlur: the odd integer nearest min(W,H)/10,
// never below 1.
int blur_kernel_size(int width, int height);

// Crop window chosen by RandomResizedCrop. Exposed for testing.
struct CropWindow {
  int x;
  int y;
  int width;
  int height;
};
CropWindow sample_crop_window(int width, int height, const RandomResizedCrop& params,
                              SeedStream& rng);

}  // namespace pretextrl

#endif  // PRETEXTRL_AUGMENT_HPP_
