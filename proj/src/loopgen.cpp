#include "wlmc/loopgen.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

namespace wlmc::loopgen {

namespace {

constexpr char kMagic[4] = {'W', 'L', 'G', 'E'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

bool get_bytes(std::istream& in, char* dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!get_bytes(in, reinterpret_cast<char*>(b), 4)) {
    throw CorruptDataError("ensemble stream truncated in header");
  }
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!get_bytes(in, reinterpret_cast<char*>(b), 8)) {
    throw CorruptDataError("ensemble stream truncated in header");
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void generate_unit_loop(std::size_t n_points, std::uint64_t seed, std::uint64_t loop_index,
                        WorldlineLoop& out) {
  GaussianStream normals(seed, loop_index);
  generate_unit_loop_from(n_points, normals, out);
}

WorldlineLoop generate_unit_loop(std::size_t n_points, std::uint64_t seed,
                                 std::uint64_t loop_index) {
  WorldlineLoop loop;
  generate_unit_loop(n_points, seed, loop_index, loop);
  return loop;
}

LoopEnsemble generate_ensemble(std::size_t count, std::size_t n_points, std::uint64_t seed) {
  if (count < 1) throw ValidationError("generate_ensemble: count must be positive");
  if (n_points < 4) throw ValidationError("generate_ensemble: n_points must be at least 4");
  LoopEnsemble ensemble;
  ensemble.n_points = n_points;
  ensemble.seed = seed;
  ensemble.algorithm_id = std::string(kAlgorithmId);
  ensemble.format_version = kFormatVersion;
  ensemble.loops.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    generate_unit_loop(n_points, seed, k, ensemble.loops[k]);
  }
  return ensemble;
}

double extent(const WorldlineLoop& loop, Axis axis) {
  const auto& c = loop.coord(axis);
  if (c.empty()) return 0.0;
  double lo = c[0], hi = c[0];
  for (const double v : c) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return hi - lo;
}

namespace {

void write_header(std::ostream& out, std::uint32_t version, std::uint64_t count,
                  std::uint64_t n_points, std::uint64_t seed, const std::string& algorithm_id) {
  out.write(kMagic, 4);
  put_u32(out, version);
  put_u64(out, count);
  put_u64(out, n_points);
  put_u64(out, seed);
  put_u32(out, static_cast<std::uint32_t>(algorithm_id.size()));
  out.write(algorithm_id.data(), static_cast<std::streamsize>(algorithm_id.size()));
}

void write_loop(std::ostream& out, const WorldlineLoop& loop) {
  for (std::size_t i = 0; i < loop.n_points(); ++i) {
    put_f64(out, loop.x[i]);
    put_f64(out, loop.y[i]);
    put_f64(out, loop.z[i]);
  }
}

}  // namespace

void save_ensemble(const LoopEnsemble& ensemble, std::ostream& out) {
  write_header(out, ensemble.format_version, ensemble.count(), ensemble.n_points, ensemble.seed,
               ensemble.algorithm_id);
  for (const auto& loop : ensemble.loops) write_loop(out, loop);
  if (!out) throw IoError("save_ensemble: write failed");
}

void generate_and_save_ensemble(std::size_t count, std::size_t n_points, std::uint64_t seed,
                                std::ostream& out) {
  if (count < 1) throw ValidationError("generate_and_save_ensemble: count must be positive");
  if (n_points < 4) throw ValidationError("generate_and_save_ensemble: n_points must be at least 4");
  write_header(out, kFormatVersion, count, n_points, seed, std::string(kAlgorithmId));
  WorldlineLoop loop;
  for (std::size_t k = 0; k < count; ++k) {
    generate_unit_loop(n_points, seed, k, loop);
    write_loop(out, loop);
  }
  if (!out) throw IoError("generate_and_save_ensemble: write failed");
}

LoopEnsemble load_ensemble(std::istream& in) {
  char magic[4];
  if (!get_bytes(in, magic, 4)) throw CorruptDataError("ensemble stream shorter than magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("not an ensemble stream (bad magic bytes)");
  }
  LoopEnsemble ensemble;
  ensemble.format_version = get_u32(in);
  if (ensemble.format_version != kFormatVersion) {
    throw FormatError("unsupported ensemble format version " +
                      std::to_string(ensemble.format_version));
  }
  const std::uint64_t count = get_u64(in);
  ensemble.n_points = get_u64(in);
  ensemble.seed = get_u64(in);
  const std::uint32_t id_len = get_u32(in);
  ensemble.algorithm_id.resize(id_len);
  if (id_len > 0 && !get_bytes(in, ensemble.algorithm_id.data(), id_len)) {
    throw CorruptDataError("ensemble stream truncated in algorithm id");
  }
  ensemble.loops.resize(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    auto& loop = ensemble.loops[k];
    loop.resize(ensemble.n_points);
    for (std::uint64_t i = 0; i < ensemble.n_points; ++i) {
      unsigned char b[24];
      if (!get_bytes(in, reinterpret_cast<char*>(b), 24)) {
        throw CorruptDataError("ensemble stream truncated at loop " + std::to_string(k) +
                               " of " + std::to_string(count));
      }
      for (int d = 0; d < 3; ++d) {
        std::uint64_t v = 0;
        for (int j = 7; j >= 0; --j) v = (v << 8) | b[8 * d + j];
        const double coord = std::bit_cast<double>(v);
        if (d == 0) loop.x[i] = coord;
        else if (d == 1) loop.y[i] = coord;
        else loop.z[i] = coord;
      }
    }
  }
  return ensemble;
}

}  // namespace wlmc::loopgen
