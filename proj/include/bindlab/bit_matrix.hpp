#pragma once

// Square 0/1 matrices with packed rows, plus the permutation-pair and
// window/diagonal index helpers the protocols are built from. All public
// indices are 1-based; the packed storage is the only 0-based layer.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bindlab/rng.hpp"

namespace bindlab {

class BitMatrix {
 public:
  BitMatrix() : n_(0), stride_(0) {}

  explicit BitMatrix(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("BitMatrix: negative size");
    stride_ = (static_cast<size_t>(n) + 63) / 64;
    words_.assign(static_cast<size_t>(n) * stride_, 0);
  }

  int n() const { return n_; }

  bool get(int i, int j) const {
    check(i, j);
    size_t c = static_cast<size_t>(j - 1);
    return (row(i)[c >> 6] >> (c & 63)) & 1u;
  }

  void set(int i, int j, bool v) {
    check(i, j);
    size_t c = static_cast<size_t>(j - 1);
    uint64_t m = 1ull << (c & 63);
    if (v)
      row(i)[c >> 6] |= m;
    else
      row(i)[c >> 6] &= ~m;
  }

  size_t popcount() const {
    size_t s = 0;
    for (uint64_t w : words_) s += static_cast<size_t>(__builtin_popcountll(w));
    return s;
  }

  bool operator==(const BitMatrix& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }
  bool operator!=(const BitMatrix& o) const { return !(*this == o); }

  // Entry-wise XOR; operands must have equal size.
  friend BitMatrix xor_mask(const BitMatrix& a, const BitMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("xor_mask: size mismatch");
    BitMatrix r(a.n_);
    for (size_t w = 0; w < a.words_.size(); ++w)
      r.words_[w] = a.words_[w] ^ b.words_[w];
    return r;
  }

  // Every entry i.i.d. fair coin.
  static BitMatrix random(int n, Rng& rng) {
    BitMatrix m(n);
    if (n == 0) return m;
    uint64_t tail_mask =
        (n % 64 == 0) ? ~0ull : ((1ull << (n % 64)) - 1);
    for (int i = 1; i <= n; ++i) {
      uint64_t* r = m.row(i);
      for (size_t w = 0; w < m.stride_; ++w) r[w] = rng.u64();
      r[m.stride_ - 1] &= tail_mask;
    }
    return m;
  }

  // Iterate set entries in row-major order.
  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (int i = 1; i <= n_; ++i) {
      const uint64_t* r = row(i);
      for (size_t w = 0; w < stride_; ++w) {
        uint64_t bits = r[w];
        while (bits) {
          int b = __builtin_ctzll(bits);
          bits &= bits - 1;
          fn(i, static_cast<int>(w * 64) + b + 1);
        }
      }
    }
  }

 private:
  void check(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
      throw std::out_of_range("BitMatrix: index out of range");
  }
  uint64_t* row(int i) { return words_.data() + static_cast<size_t>(i - 1) * stride_; }
  const uint64_t* row(int i) const {
    return words_.data() + static_cast<size_t>(i - 1) * stride_;
  }

  int n_;
  size_t stride_;
  std::vector<uint64_t> words_;
};

// Pair of row/column bijections on [1..n], stored in image form.
struct PermutationPair {
  std::vector<int> sigma1;  // sigma1[i-1] = image of row i
  std::vector<int> sigma2;

  int n() const { return static_cast<int>(sigma1.size()); }
  int s1(int i) const { return sigma1[static_cast<size_t>(i - 1)]; }
  int s2(int j) const { return sigma2[static_cast<size_t>(j - 1)]; }

  static bool is_bijection(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
      if (v < 1 || v > static_cast<int>(p.size())) return false;
      if (seen[static_cast<size_t>(v - 1)]) return false;
      seen[static_cast<size_t>(v - 1)] = 1;
    }
    return true;
  }

  void validate() const {
    if (sigma1.size() != sigma2.size() || !is_bijection(sigma1) ||
        !is_bijection(sigma2))
      throw std::invalid_argument("PermutationPair: not a pair of bijections");
  }

  static PermutationPair random(int n, Rng& rng) {
    return PermutationPair{rng.permutation(n), rng.permutation(n)};
  }

  static PermutationPair identity(int n) {
    PermutationPair p;
    p.sigma1.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p.sigma1[static_cast<size_t>(i)] = i + 1;
    p.sigma2 = p.sigma1;
    return p;
  }

  PermutationPair inverse() const {
    PermutationPair inv;
    inv.sigma1.assign(sigma1.size(), 0);
    inv.sigma2.assign(sigma2.size(), 0);
    for (size_t i = 0; i < sigma1.size(); ++i)
      inv.sigma1[static_cast<size_t>(sigma1[i] - 1)] = static_cast<int>(i) + 1;
    for (size_t j = 0; j < sigma2.size(); ++j)
      inv.sigma2[static_cast<size_t>(sigma2[j] - 1)] = static_cast<int>(j) + 1;
    return inv;
  }
};

// Relabeled copy: result[sigma1(i)][sigma2(j)] = B[i][j].
inline BitMatrix permute(const BitMatrix& b, const PermutationPair& p) {
  if (p.n() != b.n()) throw std::invalid_argument("permute: size mismatch");
  p.validate();
  BitMatrix r(b.n());
  b.for_each_set([&](int i, int j) { r.set(p.s1(i), p.s2(j), true); });
  return r;
}

// k x k window anchored at (x, y) with the anchor itself excluded:
// S(x,y) = { (i,j) : x <= i < x+k, y <= j < y+k } \ { (x,y) }.
struct IndexWindow {
  int n = 0, k = 0, x = 0, y = 0;

  void validate() const {
    if (k < 1 || k > n || x < 1 || y < 1 || x + k - 1 > n || y + k - 1 > n)
      throw std::invalid_argument("IndexWindow: window does not fit");
  }

  bool contains(int i, int j) const {
    return i >= x && i < x + k && j >= y && j < y + k && !(i == x && j == y);
  }

  // Row-major enumeration of the k^2 - 1 window positions.
  std::vector<std::pair<int, int>> indices() const {
    validate();
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(k) * k - 1);
    for (int i = x; i < x + k; ++i)
      for (int j = y; j < y + k; ++j)
        if (!(i == x && j == y)) out.emplace_back(i, j);
    return out;
  }

  // Diagonal through the anchor, anchor included: (x+q, y+q), q = 0..k-1.
  std::vector<std::pair<int, int>> diagonal() const {
    validate();
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(k));
    for (int q = 0; q < k; ++q) out.emplace_back(x + q, y + q);
    return out;
  }
};

inline std::vector<std::pair<int, int>> window_indices(const IndexWindow& w) {
  return w.indices();
}

inline std::vector<std::pair<int, int>> diagonal_indices(const IndexWindow& w) {
  return w.diagonal();
}

// --- text fixture formats -------------------------------------------------
// Matrix: first line n, then n lines of n characters '0'/'1'.
// Permutation: a single line of n space-separated integers (the image).

inline void write_matrix(std::ostream& os, const BitMatrix& m) {
  os << m.n() << "\n";
  for (int i = 1; i <= m.n(); ++i) {
    std::string line(static_cast<size_t>(m.n()), '0');
    for (int j = 1; j <= m.n(); ++j)
      if (m.get(i, j)) line[static_cast<size_t>(j - 1)] = '1';
    os << line << "\n";
  }
}

inline BitMatrix read_matrix(std::istream& is) {
  int n = -1;
  if (!(is >> n) || n < 0) throw std::runtime_error("matrix: bad size line");
  BitMatrix m(n);
  std::string line;
  for (int i = 1; i <= n; ++i) {
    if (!(is >> line) || static_cast<int>(line.size()) != n)
      throw std::runtime_error("matrix: bad row " + std::to_string(i));
    for (int j = 1; j <= n; ++j) {
      char c = line[static_cast<size_t>(j - 1)];
      if (c != '0' && c != '1')
        throw std::runtime_error("matrix: bad character in row " +
                                 std::to_string(i));
      if (c == '1') m.set(i, j, true);
    }
  }
  return m;
}

inline void write_permutation(std::ostream& os, const std::vector<int>& p) {
  for (size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
  os << "\n";
}

inline std::vector<int> read_permutation(std::istream& is, int n) {
  std::vector<int> p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    if (!(is >> p[static_cast<size_t>(i)]))
      throw std::runtime_error("permutation: short line");
  if (!PermutationPair::is_bijection(p))
    throw std::runtime_error("permutation: not a bijection of [1..n]");
  return p;
}

}  // namespace bindlab
