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

#ifndef PRETEXTRL_TESTS_TEST_UTIL_HPP_
#define PRETEXTRL_TESTS_TEST_UTIL_HPP_

#include <atomic>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "pretextrl/image.hpp"
#include "pretextrl/seed.hpp"

namespace pretextrl::testing {

inline RasterImage random_image(int w, int h, SeedStream& rng) {
  RasterImage img(w, h);
  for (auto& b : img.mutable_pixels()) b = static_cast<std::uint8_t>(rng.uniform_index(256));
  return img;
}

// Pixel value encodes its coordinates, so any misplacement is visible.
inline RasterImage coordinate_image(int w, int h) {
  RasterImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.set(x, y, {static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y),
                     static_cast<std::uint8_t>((x * 7 + y * 13) & 0xff)});
    }
  }
  return img;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("pretextrl_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace pretextrl::testing

#endif  // PRETEXTRL_TESTS_TEST_UTIL_HPP_
