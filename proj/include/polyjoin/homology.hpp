#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyjoin/complex.hpp"
#include "polyjoin/error.hpp"
#include "polyjoin/guardrails.hpp"
#include "polyjoin/operations.hpp"

namespace polyjoin {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

/// Sparse integer column: (row, value) pairs with increasing rows, no zeros.
template <class Int>
using SparseColumn = std::vector<std::pair<std::uint32_t, Int>>;

/// Reduced chain complex of K. Degree d (from -1 to dim K) has basis faces(K, d)
/// in lexicographic order; boundary[d + 1] holds the columns of
/// D_d : C_d -> C_{d-1}, with D_{-1} = 0.
struct ChainComplexData {
  std::vector<std::size_t> basis_size;                   ///< index d + 1
  std::vector<std::vector<SparseColumn<int>>> boundary;  ///< index d + 1

  int top_degree() const { return static_cast<int>(basis_size.size()) - 2; }
};

struct SnfResult {
  std::vector<BigInt> diagonal;  ///< invariant factors, then zeros; length min(rows, cols)
  std::size_t rank = 0;
};

struct HomologyGroup {
  int degree = 0;
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  ///< entries > 1, each dividing the next

  bool trivial() const { return rank == 0 && torsion.empty(); }
};

// ---- chain complexes -------------------------------------------------------------

/// Builds the chain complex of K and checks D_{d} D_{d+1} = 0.
template <VertexMask Mask>
ChainComplexData chain_complex(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  const int top = k.dimension();
  std::vector<std::vector<Mask>> basis;
  for (int d = -1; d <= top; ++d) {
    basis.push_back(face_masks(k, d));
    if (basis.back().size() > guard.faces_per_degree) {
      fail(ErrorKind::guardrail, "degree " + std::to_string(d) + " has " + std::to_string(basis.back().size()) +
                                     " faces, above the bound " + std::to_string(guard.faces_per_degree));
    }
  }

  ChainComplexData cc;
  for (const auto& b : basis) cc.basis_size.push_back(b.size());
  cc.boundary.resize(basis.size());
  for (std::size_t level = 1; level < basis.size(); ++level) {
    std::unordered_map<Mask, std::uint32_t, MaskHash<Mask>> row_of;
    for (std::size_t r = 0; r < basis[level - 1].size(); ++r) row_of.emplace(basis[level - 1][r], static_cast<std::uint32_t>(r));
    auto& columns = cc.boundary[level];
    columns.reserve(basis[level].size());
    for (const auto& face : basis[level]) {
      SparseColumn<int> col;
      int sign = 1;
      for_each_bit(face, [&](std::size_t v) {
        Mask sub = face;
        reset_bit(sub, v);
        col.emplace_back(row_of.at(sub), sign);
        sign = -sign;
      });
      std::sort(col.begin(), col.end());
      columns.push_back(std::move(col));
    }
  }

  for (std::size_t level = 2; level < cc.boundary.size(); ++level) {
    for (const auto& col : cc.boundary[level]) {
      std::unordered_map<std::uint32_t, long long> image;
      for (const auto& [row, value] : col) {
        for (const auto& [row2, value2] : cc.boundary[level - 1][row]) image[row2] += static_cast<long long>(value) * value2;
      }
      for (const auto& [row, value] : image) {
        if (value != 0) fail(ErrorKind::divergence, "boundary of a boundary is nonzero");
      }
    }
  }
  return cc;
}

// ---- rank over Q and F_p -----------------------------------------------------------

namespace detail {

inline bool checked_combine(long long a, long long x, long long b, long long y, long long& out) {
  // out = a*x - b*y
  long long ax = 0;
  long long by = 0;
  return !__builtin_mul_overflow(a, x, &ax) && !__builtin_mul_overflow(b, y, &by) &&
         !__builtin_sub_overflow(ax, by, &out);
}

inline bool checked_combine(const BigInt& a, const BigInt& x, const BigInt& b, const BigInt& y, BigInt& out) {
  out = a * x - b * y;
  return true;
}

inline long long gcd_abs(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline BigInt gcd_abs(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

/// Rank by fraction-free column reduction: column c is combined with the
/// earlier column owning its lowest row as c <- p*c - q*c', then divided by
/// its content. Returns nullopt if a fixed-width entry would overflow.
template <class Int>
std::optional<std::size_t> fraction_free_rank(const std::vector<SparseColumn<int>>& input) {
  std::vector<SparseColumn<Int>> reduced;
  std::unordered_map<std::uint32_t, std::size_t> owner;
  std::size_t rank = 0;
  for (const auto& source : input) {
    SparseColumn<Int> col;
    col.reserve(source.size());
    for (const auto& [r, v] : source) col.emplace_back(r, Int(v));
    while (!col.empty()) {
      const auto it = owner.find(col.back().first);
      if (it == owner.end()) break;
      const auto& piv = reduced[it->second];
      const Int p = piv.back().second;
      const Int q = col.back().second;
      SparseColumn<Int> next;
      next.reserve(col.size() + piv.size());
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < piv.size()) {
        Int value;
        std::uint32_t row;
        if (b == piv.size() || (a < col.size() && col[a].first < piv[b].first)) {
          row = col[a].first;
          if (!checked_combine(p, col[a].second, Int(0), Int(0), value)) return std::nullopt;
          ++a;
        } else if (a == col.size() || piv[b].first < col[a].first) {
          row = piv[b].first;
          if (!checked_combine(Int(0), Int(0), q, piv[b].second, value)) return std::nullopt;
          ++b;
        } else {
          row = col[a].first;
          if (!checked_combine(p, col[a].second, q, piv[b].second, value)) return std::nullopt;
          ++a;
          ++b;
        }
        if (value != 0) next.emplace_back(row, std::move(value));
      }
      Int g(0);
      for (const auto& e : next) g = gcd_abs(g, e.second);
      if (g > 1) {
        for (auto& e : next) e.second /= g;
      }
      col = std::move(next);
    }
    if (!col.empty()) {
      owner.emplace(col.back().first, reduced.size());
      reduced.push_back(std::move(col));
      ++rank;
    }
  }
  return rank;
}

// Operands are reduced mod p < 2^32, so the product fits in 64 bits.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e != 0) {
    if (e & 1U) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Rank over Q of a sparse integer matrix given by columns.
inline std::size_t rank_rational(const std::vector<SparseColumn<int>>& columns) {
  if (const auto r = detail::fraction_free_rank<long long>(columns)) return *r;
  return *detail::fraction_free_rank<BigInt>(columns);
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Rank over F_p, p a prime below 2^32.
inline std::size_t rank_mod_p(const std::vector<SparseColumn<int>>& input, std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) {
    fail("characteristic " + std::to_string(p) + " is not a prime below 2^32");
  }
  using Col = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
  std::vector<Col> reduced;
  std::unordered_map<std::uint32_t, std::size_t> owner;
  std::size_t rank = 0;
  const auto lift = [p](int v) {
    const long long m = static_cast<long long>(v) % static_cast<long long>(p);
    return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(p) : m);
  };
  for (const auto& source : input) {
    Col col;
    for (const auto& [r, v] : source) {
      if (const auto x = lift(v); x != 0) col.emplace_back(r, x);
    }
    while (!col.empty()) {
      const auto it = owner.find(col.back().first);
      if (it == owner.end()) break;
      const auto& piv = reduced[it->second];  // normalized: lowest entry is 1
      const std::uint64_t factor = col.back().second;
      Col next;
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < piv.size()) {
        std::uint32_t row;
        std::uint64_t value;
        if (b == piv.size() || (a < col.size() && col[a].first < piv[b].first)) {
          row = col[a].first;
          value = col[a++].second;
        } else {
          const std::uint64_t sub = detail::mul_mod(factor, piv[b].second, p);
          if (a < col.size() && col[a].first == piv[b].first) {
            row = col[a].first;
            value = (col[a++].second + p - sub) % p;
          } else {
            row = piv[b].first;
            value = (p - sub) % p;
          }
          ++b;
        }
        if (value != 0) next.emplace_back(row, value);
      }
      col = std::move(next);
    }
    if (!col.empty()) {
      const std::uint64_t inv = detail::pow_mod(col.back().second, p - 2, p);
      for (auto& e : col) e.second = detail::mul_mod(e.second, inv, p);
      owner.emplace(col.back().first, reduced.size());
      reduced.push_back(std::move(col));
      ++rank;
    }
  }
  return rank;
}

// ---- Smith normal form -----------------------------------------------------------

namespace detail {

/// Dense SNF by repeated smallest-entry pivoting. Returns the nonzero
/// invariant factors in divisibility order.
inline std::vector<BigInt> dense_snf_factors(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<BigInt> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      BigInt best_abs;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          const BigInt v = abs(a[i][j]);
          if (!best || v < best_abs) {
            best = {i, j};
            best_abs = v;
          }
        }
      }
      if (!best) return out;
      std::swap(a[t], a[best->first]);
      for (auto& row : a) std::swap(row[t], row[best->second]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row into row t and pivot again.
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < rows && !bad; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (!bad) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[*bad][j];
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

}  // namespace detail

/// Invariant factors of a dense integer matrix.
inline SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != cols) fail("matrix rows have different lengths");
  }
  SnfResult res;
  res.diagonal = detail::dense_snf_factors(a);
  res.rank = res.diagonal.size();
  res.diagonal.resize(std::min(rows, cols), BigInt(0));
  return res;
}

/// Invariant factors of a sparse matrix (columns over `rows` rows). Unit
/// pivots are eliminated sparsely first; the remainder goes through dense SNF.
inline SnfResult smith_normal_form(const std::vector<SparseColumn<int>>& columns, std::size_t rows) {
  const std::size_t cols = columns.size();
  // Row-major sparse copy.
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> row_entries(rows);
  std::vector<std::vector<std::uint32_t>> rows_of_col(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (const auto& [r, v] : columns[c]) {
      row_entries[r].emplace_back(static_cast<std::uint32_t>(c), BigInt(v));
      rows_of_col[c].push_back(r);
    }
  }
  std::vector<bool> row_alive(rows, true);
  std::vector<bool> col_alive(cols, true);
  std::size_t units = 0;

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!row_alive[r]) continue;
      const auto& entries = row_entries[r];
      const auto unit = std::find_if(entries.begin(), entries.end(), [](const auto& e) { return abs(e.second) == 1; });
      if (unit == entries.end()) continue;
      const std::uint32_t c = unit->first;
      const BigInt pivot = unit->second;
      const auto pivot_row = entries;
      for (std::uint32_t i : rows_of_col[c]) {
        if (i == r || !row_alive[i]) continue;
        auto& target = row_entries[i];
        const auto hit = std::lower_bound(target.begin(), target.end(), c,
                                          [](const auto& e, std::uint32_t col) { return e.first < col; });
        if (hit == target.end() || hit->first != c) continue;
        const BigInt factor = hit->second * pivot;  // pivot is +-1
        std::vector<std::pair<std::uint32_t, BigInt>> merged;
        std::size_t a = 0, b = 0;
        while (a < target.size() || b < pivot_row.size()) {
          if (b == pivot_row.size() || (a < target.size() && target[a].first < pivot_row[b].first)) {
            merged.push_back(std::move(target[a++]));
          } else if (a == target.size() || pivot_row[b].first < target[a].first) {
            merged.emplace_back(pivot_row[b].first, -factor * pivot_row[b].second);
            rows_of_col[pivot_row[b].first].push_back(i);
            ++b;
          } else {
            BigInt v = target[a].second - factor * pivot_row[b].second;
            if (v != 0) merged.emplace_back(target[a].first, std::move(v));
            ++a;
            ++b;
          }
        }
        target = std::move(merged);
      }
      row_alive[r] = false;
      col_alive[c] = false;
      ++units;
      progress = true;
    }
  }

  // Column c was cleared from every live row when its pivot was taken, so the
  // live block holds everything that remains.
  std::vector<std::size_t> col_index(cols, 0);
  std::size_t live_cols = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_alive[c]) col_index[c] = live_cols++;
  }
  IntMatrix rest;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!row_alive[r] || row_entries[r].empty()) continue;
    std::vector<BigInt> dense(live_cols, BigInt(0));
    for (const auto& [c, v] : row_entries[r]) dense[col_index[c]] = v;
    rest.push_back(std::move(dense));
  }

  SnfResult res;
  res.diagonal.assign(units, BigInt(1));
  const auto tail = detail::dense_snf_factors(std::move(rest));
  res.diagonal.insert(res.diagonal.end(), tail.begin(), tail.end());
  res.rank = res.diagonal.size();
  res.diagonal.resize(std::min(rows, cols), BigInt(0));
  return res;
}

// ---- homology ----------------------------------------------------------------------

/// Reduced integral homology in degrees -1..dim K (trivial groups included).
template <VertexMask Mask>
std::vector<HomologyGroup> homology_Z(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  const auto cc = chain_complex(k, guard);
  const std::size_t levels = cc.basis_size.size();
  std::vector<SnfResult> snf(levels + 1);
  for (std::size_t level = 1; level < levels; ++level) {
    snf[level] = smith_normal_form(cc.boundary[level], cc.basis_size[level - 1]);
  }
  std::vector<HomologyGroup> out;
  for (std::size_t level = 0; level < levels; ++level) {
    HomologyGroup g;
    g.degree = static_cast<int>(level) - 1;
    g.rank = cc.basis_size[level] - snf[level].rank - snf[level + 1].rank;
    for (const auto& d : snf[level + 1].diagonal) {
      if (d > 1) g.torsion.push_back(d);
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// Reduced Betti numbers over Q (characteristic 0) or F_p; entry d + 1 is
/// degree d, for d = -1..dim K.
template <VertexMask Mask>
std::vector<std::size_t> betti_over_field(const BasicComplex<Mask>& k, std::uint64_t characteristic = 0,
                                          const Guardrails& guard = {}) {
  if (characteristic != 0 && !is_prime(characteristic)) {
    fail("characteristic " + std::to_string(characteristic) + " is not 0 or a prime");
  }
  const auto cc = chain_complex(k, guard);
  const std::size_t levels = cc.basis_size.size();
  std::vector<std::size_t> rank(levels + 1, 0);
  for (std::size_t level = 1; level < levels; ++level) {
    rank[level] = characteristic == 0 ? rank_rational(cc.boundary[level]) : rank_mod_p(cc.boundary[level], characteristic);
  }
  std::vector<std::size_t> out(levels);
  for (std::size_t level = 0; level < levels; ++level) out[level] = cc.basis_size[level] - rank[level] - rank[level + 1];
  return out;
}

}  // namespace polyjoin
