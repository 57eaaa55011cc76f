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

#include "fsv/image.hpp"

#include <fstream>

#include "fsv/errors.hpp"

namespace fsv {

namespace {

// Skips whitespace and '#' comment lines between PNM header tokens.
int read_pnm_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) {
    throw DataError("read_ppm: malformed header in " + path);
  }
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    c = in.get();
  }
  return value;
}

}  // namespace

void write_ppm(const Image8& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("write_ppm: cannot open " + path);
  }
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
  if (!out) {
    throw DataError("write_ppm: write failed for " + path);
  }
}

Image8 read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("read_ppm: cannot open " + path);
  }
  char magic[2];
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '6') {
    throw DataError("read_ppm: not a binary PPM (P6): " + path);
  }
  const int width = read_pnm_int(in, path);
  const int height = read_pnm_int(in, path);
  const int maxval = read_pnm_int(in, path);
  if (width <= 0 || height <= 0 || maxval != 255) {
    throw DataError("read_ppm: unsupported dimensions or maxval in " + path);
  }
  Image8 image(width, height);
  in.read(reinterpret_cast<char*>(image.data.data()),
          static_cast<std::streamsize>(image.data.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.data.size())) {
    throw DataError("read_ppm: truncated pixel data in " + path);
  }
  return image;
}

void write_pgm(const std::vector<std::uint8_t>& gray, int width, int height,
               const std::string& path) {
  if (static_cast<std::size_t>(width) * height != gray.size()) {
    throw DimensionMismatch("write_pgm: size does not match width*height");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("write_pgm: cannot open " + path);
  }
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
  if (!out) {
    throw DataError("write_pgm: write failed for " + path);
  }
}

}  // namespace fsv
