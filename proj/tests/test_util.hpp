// Shared helpers for the test suites.
#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "fsv/math.hpp"

namespace fsv::test {

// Deterministic uniform helpers; avoids the implementation-defined standard
// distributions so frozen expected values stay valid everywhere.
struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int uniform_int(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
};

inline Vec3 random_unit(Rng& rng) {
  while (true) {
    const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double n = v.norm();
    if (n > 1e-3 && n < 1.0) {
      return v.normalized();
    }
  }
}

// Rodrigues rotation about a random axis, embedded in a Mat4.
inline Mat4 random_rotation(Rng& rng) {
  const Vec3 axis = random_unit(rng);
  const double angle = rng.uniform(0.0, kPi);
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  Mat4 m = Mat4::identity();
  m.at(0, 0) = t * axis.x * axis.x + c;
  m.at(0, 1) = t * axis.x * axis.y - s * axis.z;
  m.at(0, 2) = t * axis.x * axis.z + s * axis.y;
  m.at(1, 0) = t * axis.x * axis.y + s * axis.z;
  m.at(1, 1) = t * axis.y * axis.y + c;
  m.at(1, 2) = t * axis.y * axis.z - s * axis.x;
  m.at(2, 0) = t * axis.x * axis.z - s * axis.y;
  m.at(2, 1) = t * axis.y * axis.z + s * axis.x;
  m.at(2, 2) = t * axis.z * axis.z + c;
  return m;
}

inline Mat4 random_rigid(Rng& rng, double translation_range = 5.0) {
  Mat4 m = random_rotation(rng);
  m.at(0, 3) = rng.uniform(-translation_range, translation_range);
  m.at(1, 3) = rng.uniform(-translation_range, translation_range);
  m.at(2, 3) = rng.uniform(-translation_range, translation_range);
  return m;
}

// Unique scratch directory; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("fsv_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace fsv::test
