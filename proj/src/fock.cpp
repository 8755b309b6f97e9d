#include "pspin/fock.hpp"

#include "pspin/kernels.hpp"
#include "pspin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pspin {

namespace {

std::int64_t checked_pow_dim(int dim, int num_modes) {
  std::int64_t total = 1;
  for (int m = 0; m < num_modes; ++m) {
    if (total > kMaxStateSize / dim) {
      throw std::invalid_argument("mode space exceeds the size budget of 2^20");
    }
    total *= dim;
  }
  return total;
}

bool csr_is_hermitian(std::int64_t dim, const std::vector<std::int64_t> &row_ptr,
                      const std::vector<std::int64_t> &col,
                      const std::vector<cplx> &val) {
  const auto value_at = [&](std::int64_t r, std::int64_t c) -> cplx {
    const auto begin = col.begin() + row_ptr[static_cast<std::size_t>(r)];
    const auto end = col.begin() + row_ptr[static_cast<std::size_t>(r) + 1];
    const auto it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) {
      return {};
    }
    return val[static_cast<std::size_t>(it - col.begin())];
  };
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t k = row_ptr[static_cast<std::size_t>(r)];
         k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      if (value_at(col[static_cast<std::size_t>(k)], r) !=
          std::conj(val[static_cast<std::size_t>(k)])) {
        return false;
      }
    }
  }
  return true;
}

} // namespace

ModeSpace::ModeSpace(int num_modes_, int dim_)
    : num_modes(num_modes_), dim(dim_) {
  if (num_modes < 1) {
    throw std::invalid_argument("number of modes must be positive");
  }
  if (dim < 2 || dim % 2 != 0) {
    throw std::invalid_argument(
        "per-mode dimension must be even and at least 2");
  }
  total_dim_ = checked_pow_dim(dim, num_modes);
}

StateVector::StateVector(ModeSpace space, std::vector<cplx> amplitudes)
    : space_(space), amp_(std::move(amplitudes)) {
  if (static_cast<std::int64_t>(amp_.size()) != space_.total_dim()) {
    throw std::invalid_argument("amplitude vector length must equal D^N");
  }
}

StateVector StateVector::basis(ModeSpace space, std::int64_t flat_index) {
  if (flat_index < 0 || flat_index >= space.total_dim()) {
    throw std::invalid_argument("basis index out of range");
  }
  std::vector<cplx> amp(static_cast<std::size_t>(space.total_dim()));
  amp[static_cast<std::size_t>(flat_index)] = 1.0;
  return StateVector(space, std::move(amp));
}

double StateVector::norm() const noexcept {
  return std::sqrt(kern::norm_sq(amp_.data(), amp_.size()));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw std::runtime_error("cannot normalize the zero vector");
  }
  std::vector<cplx> amp = amp_;
  kern::scale(cplx{1.0 / n, 0.0}, amp.data(), amp.size());
  return StateVector(space_, std::move(amp));
}

StateVector operator+(const StateVector &a, const StateVector &b) {
  if (!(a.space_ == b.space_)) {
    throw std::invalid_argument("state vector spaces do not match");
  }
  std::vector<cplx> amp = a.amp_;
  kern::axpy(cplx{1.0, 0.0}, b.amp_.data(), amp.data(), amp.size());
  return StateVector(a.space_, std::move(amp));
}

StateVector operator-(const StateVector &a, const StateVector &b) {
  if (!(a.space_ == b.space_)) {
    throw std::invalid_argument("state vector spaces do not match");
  }
  std::vector<cplx> amp = a.amp_;
  kern::axpy(cplx{-1.0, 0.0}, b.amp_.data(), amp.data(), amp.size());
  return StateVector(a.space_, std::move(amp));
}

StateVector operator*(cplx c, const StateVector &v) {
  std::vector<cplx> amp(v.amp_);
  kern::scale(c, amp.data(), amp.size());
  return StateVector(v.space_, std::move(amp));
}

double distance(const StateVector &a, const StateVector &b) {
  return (a - b).norm();
}

cplx inner(const StateVector &a, const StateVector &b) {
  if (!(a.space() == b.space())) {
    throw std::invalid_argument("state vector spaces do not match");
  }
  return kern::dot_conj(a.amplitudes().data(), b.amplitudes().data(),
                        a.amplitudes().size());
}

StateVector tensor(const StateVector &a, const StateVector &b) {
  if (a.space().dim != b.space().dim) {
    throw std::invalid_argument(
        "tensor factors must share the per-mode dimension");
  }
  ModeSpace space(a.space().num_modes + b.space().num_modes, a.space().dim);
  const auto bv = b.amplitudes();
  std::vector<cplx> amp(static_cast<std::size_t>(space.total_dim()));
  for (std::int64_t i = 0; i < a.size(); ++i) {
    const cplx ai = a[i];
    if (ai == cplx{}) {
      continue;
    }
    cplx *dst = amp.data() + i * b.size();
    for (std::int64_t j = 0; j < b.size(); ++j) {
      dst[j] = ai * bv[static_cast<std::size_t>(j)];
    }
  }
  return StateVector(space, std::move(amp));
}

// ---------------------------------------------------------------------------
// SparseOperator

SparseOperator::SparseOperator(RawTag, std::int64_t dim,
                               std::vector<std::int64_t> row_ptr,
                               std::vector<std::int64_t> col,
                               std::vector<cplx> val, bool hermitian,
                               std::string label)
    : dim_(dim), row_ptr_(std::move(row_ptr)), col_(std::move(col)),
      val_(std::move(val)), hermitian_(hermitian), label_(std::move(label)) {}

SparseOperator::SparseOperator(std::int64_t dim, std::vector<Triplet> entries,
                               std::string label)
    : dim_(dim), label_(std::move(label)) {
  if (dim <= 0) {
    throw std::invalid_argument("operator dimension must be positive");
  }
  if (dim > kMaxStateSize) {
    throw std::invalid_argument("operator exceeds the size budget of 2^20");
  }
  for (const Triplet &t : entries) {
    if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim) {
      throw std::invalid_argument("operator entry index out of range");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet &a, const Triplet &b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  row_ptr_.assign(static_cast<std::size_t>(dim) + 1, 0);
  col_.reserve(entries.size());
  val_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    cplx sum = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row &&
           entries[j].col == entries[i].col) {
      sum += entries[j].value;
      ++j;
    }
    if (sum != cplx{}) {
      col_.push_back(entries[i].col);
      val_.push_back(sum);
      ++row_ptr_[static_cast<std::size_t>(entries[i].row) + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(dim); ++r) {
    row_ptr_[r + 1] += row_ptr_[r];
  }

  hermitian_ = csr_is_hermitian(dim_, row_ptr_, col_, val_);
}

SparseOperator SparseOperator::identity(std::int64_t dim) {
  std::vector<Triplet> e;
  e.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) {
    e.push_back({i, i, 1.0});
  }
  return SparseOperator(dim, std::move(e), "I");
}

SparseOperator SparseOperator::zero(std::int64_t dim) {
  return SparseOperator(dim, {}, "0");
}

std::vector<Triplet> SparseOperator::entries() const {
  std::vector<Triplet> out;
  out.reserve(val_.size());
  for (std::int64_t r = 0; r < dim_; ++r) {
    for (std::int64_t k = row_ptr_[static_cast<std::size_t>(r)];
         k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
      out.push_back({r, col_[static_cast<std::size_t>(k)],
                     val_[static_cast<std::size_t>(k)]});
    }
  }
  return out;
}

cplx SparseOperator::value_at(std::int64_t row, std::int64_t col) const {
  const auto begin = col_.begin() + row_ptr_[static_cast<std::size_t>(row)];
  const auto end = col_.begin() + row_ptr_[static_cast<std::size_t>(row) + 1];
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) {
    return {};
  }
  return val_[static_cast<std::size_t>(it - col_.begin())];
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Triplet> e;
  e.reserve(val_.size());
  for (const Triplet &t : entries()) {
    e.push_back({t.col, t.row, std::conj(t.value)});
  }
  return SparseOperator(dim_, std::move(e), label_.empty() ? std::string{}
                                                           : label_ + "^+");
}

SparseOperator SparseOperator::with_label(std::string label) const {
  SparseOperator out = *this;
  out.label_ = std::move(label);
  return out;
}

double SparseOperator::frobenius_norm() const noexcept {
  return std::sqrt(kern::norm_sq(val_.data(), val_.size()));
}

double SparseOperator::max_abs_entry() const noexcept {
  double m = 0.0;
  for (const cplx &v : val_) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

// alpha*a + beta*b by a linear row merge; inputs are canonical CSR already.
SparseOperator linear_combination(cplx alpha, const SparseOperator &a,
                                  cplx beta, const SparseOperator &b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("operator dimensions do not match");
  }
  const std::int64_t dim = a.dim();
  std::vector<std::int64_t> row_ptr(static_cast<std::size_t>(dim) + 1, 0);
  std::vector<std::int64_t> col;
  std::vector<cplx> val;
  col.reserve(a.values().size() + b.values().size());
  val.reserve(a.values().size() + b.values().size());
  for (std::int64_t r = 0; r < dim; ++r) {
    std::int64_t ka = a.row_ptr()[static_cast<std::size_t>(r)];
    std::int64_t kb = b.row_ptr()[static_cast<std::size_t>(r)];
    const std::int64_t ea = a.row_ptr()[static_cast<std::size_t>(r) + 1];
    const std::int64_t eb = b.row_ptr()[static_cast<std::size_t>(r) + 1];
    while (ka < ea || kb < eb) {
      cplx v;
      std::int64_t c;
      const std::int64_t ca = ka < ea ? a.cols()[static_cast<std::size_t>(ka)]
                                      : std::int64_t{-1};
      const std::int64_t cb = kb < eb ? b.cols()[static_cast<std::size_t>(kb)]
                                      : std::int64_t{-1};
      if (kb >= eb || (ka < ea && ca < cb)) {
        c = ca;
        v = alpha * a.values()[static_cast<std::size_t>(ka++)];
      } else if (ka >= ea || cb < ca) {
        c = cb;
        v = beta * b.values()[static_cast<std::size_t>(kb++)];
      } else {
        c = ca;
        v = alpha * a.values()[static_cast<std::size_t>(ka++)] +
            beta * b.values()[static_cast<std::size_t>(kb++)];
      }
      if (v != cplx{}) {
        col.push_back(c);
        val.push_back(v);
      }
    }
    row_ptr[static_cast<std::size_t>(r) + 1] =
        static_cast<std::int64_t>(col.size());
  }
  const bool herm = csr_is_hermitian(dim, row_ptr, col, val);
  return SparseOperator(SparseOperator::RawTag{}, dim, std::move(row_ptr),
                        std::move(col), std::move(val), herm, {});
}

SparseOperator operator+(const SparseOperator &a, const SparseOperator &b) {
  return linear_combination(1.0, a, 1.0, b);
}

SparseOperator operator-(const SparseOperator &a, const SparseOperator &b) {
  return linear_combination(1.0, a, cplx{-1.0, 0.0}, b);
}

SparseOperator operator*(cplx c, const SparseOperator &a) {
  if (c == cplx{}) {
    return SparseOperator::zero(a.dim_);
  }
  std::vector<std::int64_t> row_ptr(a.row_ptr_.begin(), a.row_ptr_.end());
  std::vector<std::int64_t> col(a.col_.begin(), a.col_.end());
  std::vector<cplx> val(a.val_.begin(), a.val_.end());
  for (cplx &v : val) {
    v *= c;
  }
  // a real nonzero factor preserves conjugate symmetry exactly, both ways
  const bool herm = c.imag() == 0.0
                        ? a.hermitian_
                        : csr_is_hermitian(a.dim_, row_ptr, col, val);
  return SparseOperator(SparseOperator::RawTag{}, a.dim_, std::move(row_ptr),
                        std::move(col), std::move(val), herm, {});
}

SparseOperator operator*(const SparseOperator &a, const SparseOperator &b) {
  if (a.dim_ != b.dim_) {
    throw std::invalid_argument("operator dimensions do not match");
  }
  // Gustavson row-by-row product with a dense scratch accumulator.
  const std::int64_t dim = a.dim_;
  std::vector<cplx> scratch(static_cast<std::size_t>(dim));
  std::vector<std::int64_t> touched;
  std::vector<Triplet> e;
  for (std::int64_t r = 0; r < dim; ++r) {
    touched.clear();
    for (std::int64_t ka = a.row_ptr_[static_cast<std::size_t>(r)];
         ka < a.row_ptr_[static_cast<std::size_t>(r) + 1]; ++ka) {
      const std::int64_t mid = a.col_[static_cast<std::size_t>(ka)];
      const cplx av = a.val_[static_cast<std::size_t>(ka)];
      for (std::int64_t kb = b.row_ptr_[static_cast<std::size_t>(mid)];
           kb < b.row_ptr_[static_cast<std::size_t>(mid) + 1]; ++kb) {
        const std::int64_t c = b.col_[static_cast<std::size_t>(kb)];
        if (scratch[static_cast<std::size_t>(c)] == cplx{}) {
          touched.push_back(c);
        }
        scratch[static_cast<std::size_t>(c)] +=
            av * b.val_[static_cast<std::size_t>(kb)];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (const std::int64_t c : touched) {
      if (scratch[static_cast<std::size_t>(c)] != cplx{}) {
        e.push_back({r, c, scratch[static_cast<std::size_t>(c)]});
      }
      scratch[static_cast<std::size_t>(c)] = {};
    }
  }
  return SparseOperator(dim, std::move(e));
}

SparseOperator kron(const SparseOperator &a, const SparseOperator &b) {
  if (a.dim() > kMaxStateSize / b.dim()) {
    throw std::invalid_argument(
        "kron product exceeds the size budget of 2^20");
  }
  const std::int64_t dim = a.dim() * b.dim();
  std::vector<std::int64_t> row_ptr(static_cast<std::size_t>(dim) + 1, 0);
  std::vector<std::int64_t> col;
  std::vector<cplx> val;
  col.reserve(a.values().size() * b.values().size());
  val.reserve(a.values().size() * b.values().size());
  // Inputs are canonical CSR, so emitting (ra*db+rb, ca*db+cb) row-major in
  // order keeps the product canonical without a re-sort.
  for (std::int64_t ra = 0; ra < a.dim(); ++ra) {
    for (std::int64_t rb = 0; rb < b.dim(); ++rb) {
      const std::int64_t row = ra * b.dim() + rb;
      for (std::int64_t ka = a.row_ptr()[static_cast<std::size_t>(ra)];
           ka < a.row_ptr()[static_cast<std::size_t>(ra) + 1]; ++ka) {
        for (std::int64_t kb = b.row_ptr()[static_cast<std::size_t>(rb)];
             kb < b.row_ptr()[static_cast<std::size_t>(rb) + 1]; ++kb) {
          col.push_back(a.cols()[static_cast<std::size_t>(ka)] * b.dim() +
                        b.cols()[static_cast<std::size_t>(kb)]);
          val.push_back(a.values()[static_cast<std::size_t>(ka)] *
                        b.values()[static_cast<std::size_t>(kb)]);
        }
      }
      row_ptr[static_cast<std::size_t>(row) + 1] =
          static_cast<std::int64_t>(col.size());
    }
  }
  return SparseOperator(SparseOperator::RawTag{}, dim, std::move(row_ptr),
                        std::move(col), std::move(val),
                        a.hermitian() && b.hermitian(), {});
}

SparseOperator kron(std::span<const SparseOperator> factors) {
  if (factors.empty()) {
    throw std::invalid_argument("kron requires at least one factor");
  }
  SparseOperator out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) {
    out = kron(out, factors[i]);
  }
  return out;
}

StateVector apply(const SparseOperator &op, const StateVector &v) {
  if (op.dim() != v.size()) {
    throw std::invalid_argument("operator/state dimension mismatch");
  }
  std::vector<cplx> out(static_cast<std::size_t>(op.dim()));
  kern::spmv(op.row_ptr().data(), op.cols().data(), op.values().data(),
             op.dim(), v.amplitudes().data(), out.data());
  return StateVector(v.space(), std::move(out));
}

double expectation(const SparseOperator &op, const StateVector &v) {
  if (!op.hermitian()) {
    throw std::invalid_argument("expectation requires a Hermitian operator");
  }
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("expectation requires a normalized state");
  }
  const StateVector w = apply(op, v);
  const cplx raw = inner(v, w);
  if (std::abs(raw.imag()) >= 1e-10) {
    throw std::runtime_error(
        "expectation of a Hermitian operator came out non-real");
  }
  return raw.real();
}

SpectralResult spectral_radius(const SparseOperator &op, double tol,
                               int max_iter) {
  if (!op.hermitian()) {
    throw std::invalid_argument("spectral_radius requires a Hermitian operator");
  }
  if (tol <= 0.0 || max_iter < 1) {
    throw std::invalid_argument("spectral_radius needs tol > 0, max_iter >= 1");
  }
  const std::int64_t dim = op.dim();
  Rng rng(0x5eed5eedULL ^ static_cast<std::uint64_t>(dim));
  std::vector<cplx> v(static_cast<std::size_t>(dim));
  for (cplx &c : v) {
    c = {rng.normal(), rng.normal()};
  }
  {
    const double n = std::sqrt(kern::norm_sq(v.data(), v.size()));
    kern::scale(cplx{1.0 / n, 0.0}, v.data(), v.size());
  }
  std::vector<cplx> w(static_cast<std::size_t>(dim));
  std::vector<cplx> u(static_cast<std::size_t>(dim));
  double est_prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    kern::spmv(op.row_ptr().data(), op.cols().data(), op.values().data(), dim,
               v.data(), w.data());
    const double wn = std::sqrt(kern::norm_sq(w.data(), w.size()));
    if (wn == 0.0) {
      return {0.0, true, it};
    }
    const double est = wn; // ||H v|| = sqrt(<v|H^2|v>) for unit v
    if (est_prev >= 0.0 &&
        std::abs(est - est_prev) < tol * std::max(est, 1e-300)) {
      return {est, true, it};
    }
    est_prev = est;
    kern::spmv(op.row_ptr().data(), op.cols().data(), op.values().data(), dim,
               w.data(), u.data());
    const double un = std::sqrt(kern::norm_sq(u.data(), u.size()));
    if (un == 0.0) {
      return {est, true, it};
    }
    std::swap(v, u);
    kern::scale(cplx{1.0 / un, 0.0}, v.data(), v.size());
  }
  return {est_prev, false, max_iter};
}

} // namespace pspin
