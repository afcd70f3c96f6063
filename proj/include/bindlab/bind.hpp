#pragma once

// The two one-way problems and the packing between them.
//
// Index with side information: Alice holds bits V[1..m], Bob holds a position
// l plus the suffix V[l+1..m] and must output V[l].
//
// Windowed variant: Alice holds an n x n 0/1 matrix A, Bob holds (x, y) in
// [n-k]^2 and the entries of A on the punctured k x k window S(x,y), and must
// output A[x][y].
//
// Packing (row-major in the top-left (n-k) x (n-k) region):
//   A[i][j] = V[j + (n-k)(i-1)] for i,j <= n-k, 0 elsewhere;
//   l  = y + (n-k)(x-1)  maps a position to its unique anchor (x, y).
// Every packed position inside S(x,y) has linear index > l, so Bob's window
// view is computable from the suffix alone; verify_suffix_sufficiency checks
// exactly that property for any candidate layout.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bindlab/bit_matrix.hpp"
#include "bindlab/rng.hpp"

namespace bindlab {

struct IndInstance {
  int m = 0;
  std::vector<uint8_t> V;  // V[i-1] = bit i
  int l = 0;               // query position, 1-based

  void validate() const {
    if (m < 1 || static_cast<int>(V.size()) != m || l < 1 || l > m)
      throw std::invalid_argument("IndInstance: malformed");
    for (uint8_t b : V)
      if (b > 1) throw std::invalid_argument("IndInstance: non-bit value");
  }

  std::vector<uint8_t> suffix() const {  // V[l+1..m]
    return std::vector<uint8_t>(V.begin() + l, V.end());
  }

  static IndInstance sample(int m, Rng& rng) {
    IndInstance ind;
    ind.m = m;
    ind.V.resize(static_cast<size_t>(m));
    for (auto& b : ind.V) b = rng.bit() ? 1 : 0;
    ind.l = rng.int_in(1, m);
    return ind;
  }
};

// Bob's private input: the window entries, stored without the anchor.
class WindowBits {
 public:
  WindowBits() = default;
  WindowBits(const IndexWindow& w) : w_(w), bits_(w.k) {}

  const IndexWindow& window() const { return w_; }

  bool at(int i, int j) const {
    if (!w_.contains(i, j))
      throw std::out_of_range("WindowBits: position outside window");
    return bits_.get(i - w_.x + 1, j - w_.y + 1);
  }

  void set(int i, int j, bool v) {
    if (!w_.contains(i, j))
      throw std::out_of_range("WindowBits: position outside window");
    bits_.set(i - w_.x + 1, j - w_.y + 1, v);
  }

  static WindowBits from_matrix(const BitMatrix& a, const IndexWindow& w) {
    WindowBits wb(w);
    for (auto [i, j] : w.indices()) wb.set(i, j, a.get(i, j));
    return wb;
  }

 private:
  IndexWindow w_;
  BitMatrix bits_;  // k x k, anchor cell unused
};

struct BindInstance {
  int n = 0, k = 0;
  BitMatrix A;     // Alice's input
  int x = 0, y = 0;
  WindowBits window;  // Bob's input; must agree with A on S(x,y)

  int truth() const { return A.get(x, y) ? 1 : 0; }

  struct AliceView alice_view() const;
  struct BobView bob_view() const;

  void validate() const {
    if (n < 1 || k < 1 || k >= n || A.n() != n)
      throw std::invalid_argument("BindInstance: bad dimensions (need 1 <= k < n)");
    IndexWindow w{n, k, x, y};
    w.validate();
    if (x > n - k || y > n - k)
      throw std::invalid_argument("BindInstance: anchor outside [n-k]^2");
    for (auto [i, j] : w.indices())
      if (window.at(i, j) != A.get(i, j))
        throw std::invalid_argument("BindInstance: window disagrees with matrix");
  }

  static BindInstance from_matrix(int n, int k, BitMatrix a, int x, int y) {
    BindInstance inst;
    inst.n = n;
    inst.k = k;
    inst.A = std::move(a);
    inst.x = x;
    inst.y = y;
    inst.window = WindowBits::from_matrix(inst.A, IndexWindow{n, k, x, y});
    inst.validate();
    return inst;
  }

  // Uniform matrix, uniform anchor.
  static BindInstance sample(int n, int k, Rng& rng) {
    BitMatrix a = BitMatrix::random(n, rng);
    int x = rng.int_in(1, n - k);
    int y = rng.int_in(1, n - k);
    return from_matrix(n, k, std::move(a), x, y);
  }
};

inline std::pair<int, int> anchor_of(int n, int k, int l) {
  int side = n - k;
  if (side < 1 || l < 1 || l > side * side)
    throw std::invalid_argument("anchor_of: position out of range");
  int x = (l - 1) / side + 1;
  int y = l - side * (x - 1);
  return {x, y};
}

inline int position_of(int n, int k, int x, int y) {
  return y + (n - k) * (x - 1);
}

// A layout maps window-relative matrix coordinates to the linear bit index
// they carry (nothing for constant-zero cells).
using PackingLayout = std::function<std::optional<int>(int i, int j)>;

inline PackingLayout row_major_layout(int n, int k) {
  int side = n - k;
  return [side](int i, int j) -> std::optional<int> {
    if (i < 1 || j < 1 || i > side || j > side) return std::nullopt;
    return j + side * (i - 1);
  };
}

// True iff every laid-out bit inside S(x,y) sits strictly after l, i.e. the
// window view is a function of the suffix. Holds for the row-major layout at
// every (n, k, l); an adversarial layout is expected to fail somewhere.
inline bool verify_suffix_sufficiency(int n, int k, int l,
                                      const PackingLayout& layout) {
  auto [x, y] = anchor_of(n, k, l);
  IndexWindow w{n, k, x, y};
  for (auto [i, j] : w.indices()) {
    auto pos = layout(i, j);
    if (pos && *pos <= l) return false;
  }
  return true;
}

inline bool verify_suffix_sufficiency(int n, int k, int l) {
  return verify_suffix_sufficiency(n, k, l, row_major_layout(n, k));
}

// Alice's side of the packing: the full matrix from the full bit string.
inline BitMatrix pack_matrix(const IndInstance& ind, int n, int k) {
  int side = n - k;
  if (ind.m != side * side)
    throw std::invalid_argument("pack_matrix: m != (n-k)^2");
  BitMatrix a(n);
  for (int i = 1; i <= side; ++i)
    for (int j = 1; j <= side; ++j)
      if (ind.V[static_cast<size_t>(position_of(n, k, i, j) - 1)])
        a.set(i, j, true);
  return a;
}

// Bob's side: window view from (l, suffix) alone — the matrix is never read.
inline WindowBits window_from_suffix(const IndInstance& ind, int n, int k) {
  auto [x, y] = anchor_of(n, k, ind.l);
  IndexWindow w{n, k, x, y};
  WindowBits wb(w);
  auto layout = row_major_layout(n, k);
  auto sfx = ind.suffix();
  for (auto [i, j] : w.indices()) {
    auto pos = layout(i, j);
    if (!pos) continue;  // constant-zero region
    if (*pos <= ind.l)
      throw std::logic_error("window_from_suffix: layout leaks prefix bit");
    wb.set(i, j, sfx[static_cast<size_t>(*pos - ind.l - 1)] != 0);
  }
  return wb;
}

// Full packing: instance whose Alice side comes from V and whose Bob side is
// built from the suffix only.
inline BindInstance pack_ind_to_bind(const IndInstance& ind, int n, int k) {
  ind.validate();
  BindInstance inst;
  inst.n = n;
  inst.k = k;
  inst.A = pack_matrix(ind, n, k);
  auto [x, y] = anchor_of(n, k, ind.l);
  inst.x = x;
  inst.y = y;
  inst.window = window_from_suffix(ind, n, k);
  inst.validate();
  return inst;
}

// --- one-way protocols -------------------------------------------------------

struct AliceView {
  int n = 0, k = 0;
  const BitMatrix& A;
};

struct BobView {
  int n = 0, k = 0;
  int x = 0, y = 0;
  const WindowBits& window;
};

struct Message {
  std::vector<uint8_t> bytes;
  size_t declared_bits = 0;  // space the protocol accounts for

  size_t bits() const { return declared_bits ? declared_bits : bytes.size() * 8; }
};

// One round, Alice -> Bob. Implementations must be stateless const objects;
// bob() returns the output bit or nullopt for an explicit "fail".
class OneWayProtocol {
 public:
  virtual ~OneWayProtocol() = default;
  virtual std::string id() const = 0;
  virtual Message alice(const AliceView& in, uint64_t shared_seed) const = 0;
  virtual std::optional<int> bob(const BobView& in, const Message& msg,
                                 uint64_t shared_seed) const = 0;
};

inline AliceView BindInstance::alice_view() const { return {n, k, A}; }
inline BobView BindInstance::bob_view() const { return {n, k, x, y, window}; }

}  // namespace bindlab
