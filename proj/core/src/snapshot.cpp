#include "stratoflow/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "json.hpp"
#include "stratoflow/errors.hpp"

namespace stratoflow {

bool in_stored_half(Idx3 n) {
  if (n.n3 != 0) return n.n3 > 0;
  if (n.n2 != 0) return n.n2 > 0;
  return n.n1 >= 0;
}

namespace {

static_assert(sizeof(double) == 8);

void put_le(std::vector<unsigned char>& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f, double time) {
  const TorusSpec& t = f.torus();
  nlohmann::json header = {
      {"format_version", 1},
      {"torus", {t.a1, t.a2, t.a3}},
      {"grid", {t.N1, t.N2, t.N3}},
      {"time", time},
      {"components", {"v1", "v2", "v3", "theta"}},
  };
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_snapshot: cannot open " + path);
  os << header.dump() << '\n';
  std::vector<unsigned char> buf;
  for_each_mode(t, [&](Idx3 n) {
    if (!in_stored_half(n)) return;
    for (int c = 0; c < 4; ++c) {
      put_le(buf, f.at(c, n).real());
      put_le(buf, f.at(c, n).imag());
    }
  });
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_snapshot: cannot open " + path);
  std::string header_line;
  std::getline(is, header_line);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const std::exception& e) {
    throw Error("read_snapshot: bad header: " + std::string(e.what()));
  }
  if (header.value("format_version", 0) != 1)
    throw Error("read_snapshot: unsupported format_version");
  TorusSpec t;
  t.a1 = header["torus"][0];
  t.a2 = header["torus"][1];
  t.a3 = header["torus"][2];
  t.N1 = header["grid"][0];
  t.N2 = header["grid"][1];
  t.N3 = header["grid"][2];
  t.validate();
  Snapshot snap{SpectralField(t), header.value("time", 0.0)};
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());
  std::size_t half_count = 0;
  for_each_mode(t, [&](Idx3 n) { half_count += in_stored_half(n) ? 1 : 0; });
  if (buf.size() != half_count * 4 * 16)
    throw Error("read_snapshot: payload size mismatch");
  std::size_t off = 0;
  for_each_mode(t, [&](Idx3 n) {
    if (!in_stored_half(n)) return;
    for (int c = 0; c < 4; ++c) {
      double re = get_le(buf.data() + off);
      double im = get_le(buf.data() + off + 8);
      off += 16;
      snap.field.at(c, n) = cplx(re, im);
      snap.field.at(c, -n) = std::conj(cplx(re, im));
    }
  });
  snap.field.pin_zero_mode();
  return snap;
}

}  // namespace stratoflow
