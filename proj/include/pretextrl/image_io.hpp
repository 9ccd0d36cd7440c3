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

#ifndef PRETEXTRL_IMAGE_IO_HPP_
#define PRETEXTRL_IMAGE_IO_HPP_

#include <filesystem>

#include "pretextrl/image.hpp"

namespace pretextrl {

// 8-bit RGB PNG. Inputs with alpha or palette are converted to RGB.
RasterImage read_png(const std::filesystem::path& path);
void write_png(const RasterImage& img, const std::filesystem::path& path);

// Headerless row-major RGB bytes plus a sidecar `<path>.dims` holding
// "<width> <height>\n".
RasterImage read_raw(const std::filesystem::path& path);
void write_raw(const RasterImage& img, const std::filesystem::path& path);

// Dispatch on extension: ".png" or ".rgb".
RasterImage read_image(const std::filesystem::path& path);
void write_image(const RasterImage& img, const std::filesystem::path& path);

}  // namespace pretextrl

#endif  // PRETEXTRL_IMAGE_IO_HPP_
