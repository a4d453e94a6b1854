#pragma once

#include <cmath>
#include <cstdint>

namespace wlmc {

/// Counter-based Philox4x64-10 generator (Salmon et al., SC'11).
///
/// The stream is a pure function of (key0, key1, block counter), so a
/// (seed, stream_index) pair addresses an independent substream with no
/// shared state. Used with key0 = ensemble seed and key1 = loop index,
/// which makes every loop reproducible under any work partitioning.
class Philox4x64 {
public:
  Philox4x64(std::uint64_t key0, std::uint64_t key1)
      : key0_(key0), key1_(key1), block_(0), pos_(4) {}

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      fill_block();
      pos_ = 0;
    }
    return out_[pos_++];
  }

  /// Uniform double in the open interval (0, 1).
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

private:
  static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  void fill_block() {
    std::uint64_t c0 = block_++, c1 = 0, c2 = 0, c3 = 0;
    std::uint64_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint64_t hi0, lo0, hi1, lo1;
      mul_hi_lo(kMult0, c0, hi0, lo0);
      mul_hi_lo(kMult1, c2, hi1, lo1);
      const std::uint64_t n0 = hi1 ^ c1 ^ k0;
      const std::uint64_t n1 = lo1;
      const std::uint64_t n2 = hi0 ^ c3 ^ k1;
      const std::uint64_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    out_[0] = c0;
    out_[1] = c1;
    out_[2] = c2;
    out_[3] = c3;
  }

  std::uint64_t key0_, key1_;
  std::uint64_t block_;
  std::uint64_t out_[4];
  int pos_;
};

/// Standard-normal stream on top of Philox, via the Box-Muller transform.
/// Draw order is fixed by construction; two normals are produced per
/// uniform pair and handed out sequentially.
class GaussianStream {
public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream_index)
      : uniforms_(seed, stream_index), have_spare_(false), spare_(0.0) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniforms_.next_unit_open();
    const double u2 = uniforms_.next_unit_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * kPi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

private:
  static constexpr double kPi = 3.14159265358979323846;

  Philox4x64 uniforms_;
  bool have_spare_;
  double spare_;
};

}  // namespace wlmc
