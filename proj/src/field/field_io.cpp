#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "vdoc/error.hpp"
#include "vdoc/field.hpp"

namespace vdoc {
namespace {

constexpr std::array<char, 8> kMagic{'V', 'D', 'O', 'C', 'F', 'L', 'D', '1'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) { little_endian(v, 4); }
  void u64(std::uint64_t v) { little_endian(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

 private:
  void little_endian(std::uint64_t v, int bytes) {
    std::array<char, 8> buf{};
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out_.write(buf.data(), bytes);
  }
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(little_endian(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(4)); }
  std::uint64_t u64() { return little_endian(8); }
  double f64() { return std::bit_cast<double>(u64()); }

 private:
  std::uint64_t little_endian(int bytes) {
    std::array<unsigned char, 8> buf{};
    if (!in_.read(reinterpret_cast<char*>(buf.data()), bytes)) throw DataError("field file truncated");
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
  }
  std::istream& in_;
};

}  // namespace

void write_field(const SpaceTimeField& field, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  Writer w(out);
  w.u32(static_cast<std::uint32_t>(field.grid_s()));
  w.u32(static_cast<std::uint32_t>(field.grid_t()));
  w.u8(field.mode() == FieldMode::normalized ? 0 : 1);
  w.f64(field.extent().space);
  w.f64(field.extent().time);
  w.f64(field.kernel().space_bandwidth);
  w.f64(field.kernel().time_bandwidth);
  w.f64(field.kernel().truncation_radius);
  w.u64(field.vocabulary_size());
  w.u64(field.vocabulary_hash());
  w.u64(field.entries().size());
  for (auto o : field.offsets()) w.u64(o);
  for (const auto& e : field.entries()) {
    w.u32(e.id);
    w.f64(e.value);
  }
  for (auto m : field.masses()) w.f64(m);
  if (!out) throw DataError("failed writing field");
}

SpaceTimeField read_field(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw DataError("not a vdoc field file");
  Reader r(in);
  const std::size_t S = r.u32();
  const std::size_t T = r.u32();
  const auto mode_byte = r.u8();
  if (mode_byte > 1) throw DataError("field file has unknown mode");
  Extent extent;
  extent.space = r.f64();
  extent.time = r.f64();
  KernelSpec kernel;
  kernel.space_bandwidth = r.f64();
  kernel.time_bandwidth = r.f64();
  kernel.truncation_radius = r.f64();
  const std::size_t V = r.u64();
  const std::uint64_t hash = r.u64();
  const std::uint64_t nnz = r.u64();
  if (S == 0 || T == 0) throw DataError("field file has an empty grid");
  std::vector<std::uint64_t> offsets(S * T + 1);
  for (auto& o : offsets) o = r.u64();
  if (offsets.back() != nnz) throw DataError("field file offsets do not match entry count");
  std::vector<SparseEntry> entries(nnz);
  for (auto& e : entries) {
    e.id = r.u32();
    e.value = r.f64();
  }
  std::vector<double> mass(S * T);
  for (auto& m : mass) m = r.f64();
  return SpaceTimeField(S, T, mode_byte == 0 ? FieldMode::normalized : FieldMode::non_normalized, extent, kernel,
                        V, hash, std::move(offsets), std::move(entries), std::move(mass));
}

}  // namespace vdoc
