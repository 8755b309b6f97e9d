#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Minimal complex linear algebra over truncated multi-mode Fock spaces.
//
// Basis ordering convention, used everywhere: mode 1 is most significant,
// i.e. the flat index of the occupation (n_1, ..., n_N) at per-mode
// truncation D is n_1*D^(N-1) + ... + n_N. Kronecker products follow the
// same convention (first factor most significant).

namespace pspin {

using cplx = std::complex<double>;

/// Hard cap on the flat dimension of any state vector or operator.
inline constexpr std::int64_t kMaxStateSize = std::int64_t{1} << 20;

struct ModeSpace {
  int num_modes = 1;
  int dim = 2; // per-mode truncation, must be even and >= 2

  ModeSpace(int num_modes_, int dim_);

  std::int64_t total_dim() const noexcept { return total_dim_; }

  friend bool operator==(const ModeSpace &, const ModeSpace &) = default;

private:
  std::int64_t total_dim_ = 2;
};

class StateVector {
public:
  StateVector(ModeSpace space, std::vector<cplx> amplitudes);

  /// Computational basis state |flat_index>.
  static StateVector basis(ModeSpace space, std::int64_t flat_index);

  const ModeSpace &space() const noexcept { return space_; }
  std::span<const cplx> amplitudes() const noexcept { return amp_; }
  std::int64_t size() const noexcept {
    return static_cast<std::int64_t>(amp_.size());
  }
  cplx operator[](std::int64_t i) const { return amp_[static_cast<std::size_t>(i)]; }

  double norm() const noexcept;
  StateVector normalized() const;

  friend StateVector operator+(const StateVector &a, const StateVector &b);
  friend StateVector operator-(const StateVector &a, const StateVector &b);
  friend StateVector operator*(cplx c, const StateVector &v);

private:
  ModeSpace space_;
  std::vector<cplx> amp_;
};

/// Euclidean distance ||a - b||.
double distance(const StateVector &a, const StateVector &b);

/// <a|b>
cplx inner(const StateVector &a, const StateVector &b);

/// Tensor product; both factors must share the per-mode dimension.
StateVector tensor(const StateVector &a, const StateVector &b);

struct Triplet {
  std::int64_t row = 0;
  std::int64_t col = 0;
  cplx value;
};

/// Immutable sparse complex matrix in canonical CSR form: entries sorted by
/// (row, col), duplicates summed, exact zeros dropped. The hermitian flag is
/// established at construction by an exact conjugate-symmetry check (all
/// operator values in this project are exact in floating point, so the
/// check does not need a tolerance).
class SparseOperator {
public:
  SparseOperator(std::int64_t dim, std::vector<Triplet> entries,
                 std::string label = {});

  static SparseOperator identity(std::int64_t dim);
  static SparseOperator zero(std::int64_t dim);

  std::int64_t dim() const noexcept { return dim_; }
  std::int64_t nnz() const noexcept {
    return static_cast<std::int64_t>(val_.size());
  }
  bool hermitian() const noexcept { return hermitian_; }
  const std::string &label() const noexcept { return label_; }

  std::span<const std::int64_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::int64_t> cols() const noexcept { return col_; }
  std::span<const cplx> values() const noexcept { return val_; }

  std::vector<Triplet> entries() const;
  cplx value_at(std::int64_t row, std::int64_t col) const;

  SparseOperator adjoint() const;
  SparseOperator with_label(std::string label) const;

  double frobenius_norm() const noexcept;
  double max_abs_entry() const noexcept;

  friend SparseOperator operator+(const SparseOperator &a,
                                  const SparseOperator &b);
  friend SparseOperator operator-(const SparseOperator &a,
                                  const SparseOperator &b);
  friend SparseOperator operator*(cplx c, const SparseOperator &a);
  friend SparseOperator operator*(const SparseOperator &a,
                                  const SparseOperator &b);
  friend SparseOperator linear_combination(cplx alpha, const SparseOperator &a,
                                           cplx beta, const SparseOperator &b);

private:
  struct RawTag {};
  SparseOperator(RawTag, std::int64_t dim, std::vector<std::int64_t> row_ptr,
                 std::vector<std::int64_t> col, std::vector<cplx> val,
                 bool hermitian, std::string label);

  friend SparseOperator kron(const SparseOperator &, const SparseOperator &);

  std::int64_t dim_ = 0;
  std::vector<std::int64_t> row_ptr_;
  std::vector<std::int64_t> col_;
  std::vector<cplx> val_;
  bool hermitian_ = false;
  std::string label_;
};

/// alpha*a + beta*b without re-canonicalization (linear row merge).
SparseOperator linear_combination(cplx alpha, const SparseOperator &a,
                                  cplx beta, const SparseOperator &b);

/// Kronecker product, first factor most significant. The hermitian flag of
/// the product is the AND of the factor flags.
SparseOperator kron(const SparseOperator &a, const SparseOperator &b);
SparseOperator kron(std::span<const SparseOperator> factors);

/// y = op * v. The input is not modified.
StateVector apply(const SparseOperator &op, const StateVector &v);

/// <v|op|v> for a Hermitian op and normalized v. The raw inner product must
/// have |imaginary part| < 1e-10; it is discarded.
double expectation(const SparseOperator &op, const StateVector &v);

struct SpectralResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Largest |eigenvalue| of a Hermitian operator by power iteration on op^2
/// (the square is positive semidefinite, so the iteration cannot stall on a
/// +/-lambda_max pair). Deterministic seeded start vector.
SpectralResult spectral_radius(const SparseOperator &op, double tol = 1e-10,
                               int max_iter = 10000);

} // namespace pspin
