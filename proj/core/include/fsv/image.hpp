/*
 * Copyright 2026 The fsv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fsv {

/// 8-bit RGB image, row-major, interleaved channels.
struct Image8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // height * width * 3

  Image8() = default;
  Image8(int width_in, int height_in)
      : width(width_in),
        height(height_in),
        data(static_cast<std::size_t>(width_in) * height_in * 3, 0) {}

  std::uint8_t& at(int row, int col, int ch) {
    return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch];
  }
  std::uint8_t at(int row, int col, int ch) const {
    return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch];
  }
};

/// Binary PPM (P6), the toolkit's lossless 8-bit RGB container.
void write_ppm(const Image8& image, const std::string& path);
Image8 read_ppm(const std::string& path);

/// Binary PGM (P5) from already-quantized gray levels.
void write_pgm(const std::vector<std::uint8_t>& gray, int width, int height,
               const std::string& path);

}  // namespace fsv
