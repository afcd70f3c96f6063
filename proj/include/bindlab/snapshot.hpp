#pragma once

// Snapshots are the protocol messages: the full serialized memory state of a
// streaming algorithm. Canonical layout (all integers little-endian):
//
//   payload := [algorithm id, 12 bytes, zero padded]
//              [n, u32] [params byte length, u32] [params bytes] [body...]
//
// params is the canonical "key=value" comma-joined string (keys sorted).
// measure_space(s) = 8 * payload bytes; this is the space usage a protocol
// reports. Snapshot FILES prepend a 16-byte magic+version header which does
// not count as algorithm state.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bindlab {

struct Snapshot {
  std::string algorithm_id;
  std::vector<uint8_t> payload;

  size_t bit_length() const { return payload.size() * 8; }
};

inline size_t measure_space(const Snapshot& s) { return s.bit_length(); }

inline constexpr size_t kSnapshotIdBytes = 12;
inline constexpr char kSnapshotFileMagic[12] = {'B', 'I', 'N', 'D', 'L', 'A',
                                                'B', 'S', 'N', 'A', 'P', '1'};
inline constexpr uint32_t kSnapshotFileVersion = 1;

// --- little-endian byte helpers ---------------------------------------------

inline void put_u32(std::vector<uint8_t>& out, uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(x >> (8 * i)));
}

inline uint32_t get_u32(const std::vector<uint8_t>& in, size_t& pos) {
  if (pos + 4 > in.size()) throw std::runtime_error("snapshot: truncated u32");
  uint32_t x = 0;
  for (int i = 0; i < 4; ++i)
    x |= static_cast<uint32_t>(in[pos + static_cast<size_t>(i)]) << (8 * i);
  pos += 4;
  return x;
}

// --- bit-packed bodies (LSB first within each byte) --------------------------

class BitWriter {
 public:
  void put(uint64_t value, int bits) {
    for (int b = 0; b < bits; ++b) {
      if (fill_ == 0) bytes_.push_back(0);
      if ((value >> b) & 1) bytes_.back() |= static_cast<uint8_t>(1u << fill_);
      fill_ = (fill_ + 1) % 8;
    }
  }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<uint8_t> bytes_;
  int fill_ = 0;
};

class BitReader {
 public:
  BitReader(const std::vector<uint8_t>& bytes, size_t start)
      : bytes_(bytes), pos_(start * 8) {}

  uint64_t get(int bits) {
    uint64_t v = 0;
    for (int b = 0; b < bits; ++b) {
      size_t byte = pos_ >> 3;
      if (byte >= bytes_.size())
        throw std::runtime_error("snapshot: truncated bit field");
      if ((bytes_[byte] >> (pos_ & 7)) & 1) v |= 1ull << b;
      ++pos_;
    }
    return v;
  }

 private:
  const std::vector<uint8_t>& bytes_;
  size_t pos_;
};

inline int bits_for(uint64_t max_value) {
  int b = 1;
  while ((max_value >> b) != 0) ++b;
  return b;
}

// --- canonical params strings -------------------------------------------------

inline std::string join_params(const std::map<std::string, std::string>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ',';
    out += k + "=" + v;
  }
  return out;
}

inline std::map<std::string, std::string> split_params(const std::string& s) {
  std::map<std::string, std::string> kv;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string item = s.substr(pos, end - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("params: missing '=' in \"" + item + "\"");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
    pos = end + 1;
  }
  return kv;
}

// --- header assembly ----------------------------------------------------------

inline std::vector<uint8_t> snapshot_header(const std::string& id, uint32_t n,
                                            const std::string& params) {
  if (id.size() > kSnapshotIdBytes)
    throw std::invalid_argument("snapshot: algorithm id too long");
  std::vector<uint8_t> out(kSnapshotIdBytes, 0);
  std::memcpy(out.data(), id.data(), id.size());
  put_u32(out, n);
  put_u32(out, static_cast<uint32_t>(params.size()));
  out.insert(out.end(), params.begin(), params.end());
  return out;
}

struct SnapshotHeader {
  std::string id;
  uint32_t n = 0;
  std::string params;
  size_t body_start = 0;
};

inline SnapshotHeader parse_snapshot_header(const Snapshot& s) {
  if (s.payload.size() < kSnapshotIdBytes + 8)
    throw std::runtime_error("snapshot: truncated header");
  SnapshotHeader h;
  size_t len = 0;
  while (len < kSnapshotIdBytes && s.payload[len] != 0) ++len;
  h.id.assign(reinterpret_cast<const char*>(s.payload.data()), len);
  size_t pos = kSnapshotIdBytes;
  h.n = get_u32(s.payload, pos);
  uint32_t plen = get_u32(s.payload, pos);
  if (pos + plen > s.payload.size())
    throw std::runtime_error("snapshot: truncated params");
  h.params.assign(reinterpret_cast<const char*>(s.payload.data()) + pos, plen);
  h.body_start = pos + plen;
  return h;
}

// Envelope for a message carrying one snapshot per run:
// [count u32] then per snapshot [payload length u32][payload]. The envelope
// bytes are transport framing; reported message size stays the sum of the
// snapshot payload bits.

inline std::vector<uint8_t> encode_snapshot_list(const std::vector<Snapshot>& snaps) {
  std::vector<uint8_t> out;
  put_u32(out, static_cast<uint32_t>(snaps.size()));
  for (const auto& s : snaps) {
    put_u32(out, static_cast<uint32_t>(s.payload.size()));
    out.insert(out.end(), s.payload.begin(), s.payload.end());
  }
  return out;
}

inline std::vector<Snapshot> decode_snapshot_list(const std::vector<uint8_t>& bytes) {
  size_t pos = 0;
  uint32_t count = get_u32(bytes, pos);
  std::vector<Snapshot> snaps;
  snaps.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t len = get_u32(bytes, pos);
    if (pos + len > bytes.size())
      throw std::runtime_error("snapshot list: truncated entry");
    Snapshot s;
    s.payload.assign(bytes.begin() + static_cast<ptrdiff_t>(pos),
                     bytes.begin() + static_cast<ptrdiff_t>(pos + len));
    s.algorithm_id = parse_snapshot_header(s).id;
    snaps.push_back(std::move(s));
    pos += len;
  }
  return snaps;
}

// --- snapshot files -----------------------------------------------------------

inline void write_snapshot_file(const std::string& path, const Snapshot& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.write(kSnapshotFileMagic, sizeof(kSnapshotFileMagic));
  uint8_t ver[4];
  for (int i = 0; i < 4; ++i)
    ver[i] = static_cast<uint8_t>(kSnapshotFileVersion >> (8 * i));
  os.write(reinterpret_cast<const char*>(ver), 4);
  os.write(reinterpret_cast<const char*>(s.payload.data()),
           static_cast<std::streamsize>(s.payload.size()));
  if (!os) throw std::runtime_error("write failed: " + path);
}

inline Snapshot read_snapshot_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[12];
  is.read(magic, 12);
  if (!is || std::memcmp(magic, kSnapshotFileMagic, 12) != 0)
    throw std::runtime_error("snapshot file: bad magic");
  uint8_t ver[4];
  is.read(reinterpret_cast<char*>(ver), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(ver[i]) << (8 * i);
  if (!is || v != kSnapshotFileVersion)
    throw std::runtime_error("snapshot file: unsupported version");
  Snapshot s;
  s.payload.assign(std::istreambuf_iterator<char>(is),
                   std::istreambuf_iterator<char>());
  s.algorithm_id = parse_snapshot_header(s).id;
  return s;
}

}  // namespace bindlab
