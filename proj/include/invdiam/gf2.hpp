#pragma once

// Fixed-width vectors over F2 and the small amount of linear algebra the
// rest of the library needs: dot products, rank and affine solution sets.
// Coordinate i of a vector lives in bit i of its word.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invdiam {

class Gf2Vector {
 public:
  static constexpr int kMaxDim = 32;

  constexpr Gf2Vector() = default;

  constexpr Gf2Vector(int dim, std::uint32_t bits) : bits_(bits), dim_(dim) {
    if (dim < 0 || dim > kMaxDim) {
      throw std::invalid_argument("Gf2Vector: dimension out of range");
    }
    if (dim < kMaxDim && (bits >> dim) != 0) {
      throw std::invalid_argument("Gf2Vector: bits set beyond dimension");
    }
  }

  static constexpr Gf2Vector zero(int dim) { return Gf2Vector(dim, 0); }

  static constexpr Gf2Vector ones(int dim) {
    return Gf2Vector(dim, dim == kMaxDim ? ~std::uint32_t{0} : (std::uint32_t{1} << dim) - 1);
  }

  static constexpr Gf2Vector unit(int dim, int i) {
    if (i < 0 || i >= dim) throw std::invalid_argument("Gf2Vector: unit index out of range");
    return Gf2Vector(dim, std::uint32_t{1} << i);
  }

  // "110" is the vector with coordinates (1, 1, 0).
  static Gf2Vector parse(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(kMaxDim)) {
      throw std::invalid_argument("Gf2Vector: text longer than 32 coordinates");
    }
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        bits |= std::uint32_t{1} << i;
      } else if (text[i] != '0') {
        throw std::invalid_argument("Gf2Vector: expected '0' or '1'");
      }
    }
    return Gf2Vector(static_cast<int>(text.size()), bits);
  }

  constexpr int dim() const { return dim_; }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool operator[](int i) const { return ((bits_ >> i) & 1u) != 0; }
  constexpr bool is_zero() const { return bits_ == 0; }
  constexpr int weight() const { return std::popcount(bits_); }

  constexpr Gf2Vector operator+(const Gf2Vector& other) const {
    require_same_dim(other);
    return Gf2Vector(dim_, bits_ ^ other.bits_);
  }
  constexpr Gf2Vector& operator+=(const Gf2Vector& other) { return *this = *this + other; }

  // Appends a zero coordinate; keeps every dot product unchanged.
  constexpr Gf2Vector padded(int extra = 1) const { return Gf2Vector(dim_ + extra, bits_); }

  std::string to_string() const {
    std::string out(static_cast<std::size_t>(dim_), '0');
    for (int i = 0; i < dim_; ++i) {
      if ((*this)[i]) out[static_cast<std::size_t>(i)] = '1';
    }
    return out;
  }

  constexpr void require_same_dim(const Gf2Vector& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("Gf2Vector: dimension mismatch");
  }

  friend constexpr bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

 private:
  std::uint32_t bits_ = 0;
  int dim_ = 0;
};

constexpr bool dot_bits(std::uint32_t a, std::uint32_t b) { return (std::popcount(a & b) & 1) != 0; }

constexpr bool dot(const Gf2Vector& a, const Gf2Vector& b) {
  a.require_same_dim(b);
  return dot_bits(a.bits(), b.bits());
}

enum class Parity { even, odd };

constexpr Parity parity(const Gf2Vector& a) {
  return (a.weight() & 1) != 0 ? Parity::odd : Parity::even;
}

struct Gf2Matrix {
  int dim = 0;
  std::vector<Gf2Vector> rows;

  Gf2Matrix() = default;
  explicit Gf2Matrix(int d, std::vector<Gf2Vector> r = {}) : dim(d), rows(std::move(r)) {
    for (const auto& row : rows) {
      if (row.dim() != dim) throw std::invalid_argument("Gf2Matrix: row dimension mismatch");
    }
  }

  static Gf2Matrix from_strings(int d, std::initializer_list<std::string_view> texts) {
    std::vector<Gf2Vector> r;
    for (auto t : texts) r.push_back(Gf2Vector::parse(t));
    return Gf2Matrix(d, std::move(r));
  }

  std::size_t row_count() const { return rows.size(); }
};

namespace detail {

// Reduced row echelon form of an augmented system over F2. Row r of the
// input is coefficient word rows[r] with right-hand side bit rhs bit r.
// When there are at most 64 input rows each reduced row also carries the
// set of input rows it was combined from, so an inconsistency can be traced
// back to the rows that cause it.
struct Elimination {
  bool consistent = true;
  int rank = 0;
  int nullity = 0;
  std::uint32_t particular = 0;
  std::array<std::uint32_t, Gf2Vector::kMaxDim> basis{};
  // Input rows whose sum yields 0 = 1; all rows when provenance is untracked.
  std::uint64_t conflict_rows = 0;
  bool provenance_tracked = false;
};

struct AugmentedRow {
  std::uint32_t coeffs;
  bool rhs;
  std::uint64_t origin;
};

inline Elimination eliminate(std::span<AugmentedRow> rows, int dim) {
  Elimination out;
  out.provenance_tracked = rows.size() <= 64;
  std::array<int, Gf2Vector::kMaxDim> pivot_col{};
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    const std::uint32_t mask = std::uint32_t{1} << col;
    std::size_t found = rows.size();
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r) {
      if (rows[r].coeffs & mask) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[found]);
    const AugmentedRow pivot = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && (rows[r].coeffs & mask)) {
        rows[r].coeffs ^= pivot.coeffs;
        rows[r].rhs ^= pivot.rhs;
        rows[r].origin ^= pivot.origin;
      }
    }
    pivot_col[static_cast<std::size_t>(rank)] = col;
    ++rank;
  }
  out.rank = rank;
  for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r) {
    if (rows[r].rhs) {
      out.consistent = false;
      out.conflict_rows = out.provenance_tracked ? rows[r].origin : ~std::uint64_t{0};
      return out;
    }
  }
  std::uint32_t pivots = 0;
  for (int i = 0; i < rank; ++i) {
    pivots |= std::uint32_t{1} << pivot_col[static_cast<std::size_t>(i)];
    if (rows[static_cast<std::size_t>(i)].rhs) {
      out.particular |= std::uint32_t{1} << pivot_col[static_cast<std::size_t>(i)];
    }
  }
  int nullity = 0;
  for (int col = 0; col < dim; ++col) {
    if (pivots & (std::uint32_t{1} << col)) continue;
    std::uint32_t v = std::uint32_t{1} << col;
    for (int i = 0; i < rank; ++i) {
      if (rows[static_cast<std::size_t>(i)].coeffs & (std::uint32_t{1} << col)) {
        v |= std::uint32_t{1} << pivot_col[static_cast<std::size_t>(i)];
      }
    }
    out.basis[static_cast<std::size_t>(nullity++)] = v;
  }
  out.nullity = nullity;
  return out;
}

}  // namespace detail

inline int rank(const Gf2Matrix& m) {
  std::vector<detail::AugmentedRow> rows;
  rows.reserve(m.rows.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    rows.push_back({m.rows[r].bits(), false, r < 64 ? std::uint64_t{1} << r : 0});
  }
  return detail::eliminate(rows, m.dim).rank;
}

// The affine set particular + span(nullspace).
struct AffineSolution {
  Gf2Vector particular;
  std::vector<Gf2Vector> nullspace;

  std::uint64_t size() const { return std::uint64_t{1} << nullspace.size(); }

  // Member number `index`, selecting nullspace vectors by the bits of index.
  Gf2Vector member(std::uint64_t index) const {
    Gf2Vector v = particular;
    for (std::size_t i = 0; i < nullspace.size(); ++i) {
      if ((index >> i) & 1u) v += nullspace[i];
    }
    return v;
  }
};

// All x with m * x = rhs, or nullopt when the system is inconsistent.
inline std::optional<AffineSolution> solve_linear(const Gf2Matrix& m, const std::vector<bool>& rhs) {
  if (rhs.size() != m.rows.size()) {
    throw std::invalid_argument("solve_linear: right-hand side length differs from row count");
  }
  std::vector<detail::AugmentedRow> rows;
  rows.reserve(m.rows.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    rows.push_back({m.rows[r].bits(), rhs[r], r < 64 ? std::uint64_t{1} << r : 0});
  }
  const auto e = detail::eliminate(rows, m.dim);
  if (!e.consistent) return std::nullopt;
  AffineSolution sol{Gf2Vector(m.dim, e.particular), {}};
  for (int i = 0; i < e.nullity; ++i) {
    sol.nullspace.emplace_back(m.dim, e.basis[static_cast<std::size_t>(i)]);
  }
  return sol;
}

inline bool is_independent(std::span<const Gf2Vector> vs) {
  if (vs.empty()) return true;
  Gf2Matrix m(vs.front().dim(), {vs.begin(), vs.end()});
  return rank(m) == static_cast<int>(vs.size());
}

// dim(span(vs) ∩ span(vs)^⊥): rank of the span minus rank of the Gram
// matrix of a basis of the span.
inline int radical_dimension(std::span<const Gf2Vector> vs) {
  if (vs.empty()) return 0;
  const int dim = vs.front().dim();
  std::vector<Gf2Vector> basis;
  for (const auto& v : vs) {
    basis.push_back(v);
    if (rank(Gf2Matrix(dim, basis)) < static_cast<int>(basis.size())) basis.pop_back();
  }
  const int r = static_cast<int>(basis.size());
  if (r > Gf2Vector::kMaxDim) throw std::logic_error("radical_dimension: rank exceeds word size");
  std::vector<Gf2Vector> gram;
  for (int i = 0; i < r; ++i) {
    std::uint32_t row = 0;
    for (int j = 0; j < r; ++j) {
      if (dot(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)])) row |= std::uint32_t{1} << j;
    }
    gram.emplace_back(r, row);
  }
  return r - rank(Gf2Matrix(r, gram));
}

}  // namespace invdiam
