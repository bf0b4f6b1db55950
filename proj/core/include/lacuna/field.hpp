#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <new>
#include <span>
#include <vector>

namespace lacuna {

using cplx = std::complex<double>;

// 64-byte aligned storage so every buffer matches the alignment the FFT
// plans were created with.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), kAlign));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

using Buffer = std::vector<cplx, AlignedAllocator<cplx>>;

bool is_valid_grid_size(std::size_t n);

// Lattice index <-> signed frequency in [-N/2, N/2).
inline int frequency_of_index(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}
inline std::size_t index_of_frequency(int xi, std::size_t n) {
  return xi >= 0 ? static_cast<std::size_t>(xi) : static_cast<std::size_t>(xi + static_cast<int>(n));
}

namespace detail {

// Shared storage for the two field kinds. Square N x N, row-major, row = x2.
template <class Tag>
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::size_t n);
  Grid(std::size_t n, Buffer data);

  std::size_t size() const { return n_; }
  std::size_t count() const { return data_.size(); }
  double spacing() const { return 1.0 / static_cast<double>(n_); }
  bool empty() const { return n_ == 0; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::span<cplx> values() { return data_; }
  std::span<const cplx> values() const { return data_; }

  bool operator==(const Grid& other) const = default;

 private:
  std::size_t n_ = 0;
  Buffer data_;
};

struct SpatialTag;
struct SpectralTag;

}  // namespace detail

using ComplexField = detail::Grid<detail::SpatialTag>;
using SpectralField = detail::Grid<detail::SpectralTag>;

// Coefficient access by signed frequency.
cplx coefficient(const SpectralField& s, int xi1, int xi2);

// Nonnegative (or general real) samples; output of maximal operators.
class RealField {
 public:
  RealField() = default;
  explicit RealField(std::size_t n, double fill = 0.0);

  std::size_t size() const { return n_; }
  std::size_t count() const { return v_.size(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }
  double max() const;

  ComplexField to_complex() const;
  static RealField modulus(const ComplexField& f);

 private:
  std::size_t n_ = 0;
  std::vector<double> v_;
};

struct LatticePoint {
  std::size_t index;  // row-major position in a SpectralField
  int xi1;
  int xi2;

  double norm() const;
  double dot(double v1, double v2) const { return xi1 * v1 + xi2 * v2; }
};

// Every lattice frequency exactly once, in storage order.
class FrequencyLattice {
 public:
  explicit FrequencyLattice(std::size_t n) : n_(n) {}

  class iterator {
   public:
    using value_type = LatticePoint;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::size_t n, std::size_t i) : n_(n), i_(i) {}
    LatticePoint operator*() const {
      return {i_, frequency_of_index(i_ % n_, n_), frequency_of_index(i_ / n_, n_)};
    }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++i_;
      return t;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    std::size_t n_ = 0;
    std::size_t i_ = 0;
  };

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, n_ * n_}; }
  std::size_t size() const { return n_ * n_; }

 private:
  std::size_t n_;
};

// Forward transform divides by N^2 so a plane wave has coefficient 1.
SpectralField forward(const ComplexField& f);
ComplexField inverse(const SpectralField& s);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// (h^2 sum |f|^p)^(1/p), or max |f| for p = infinity. Requires p > 1.
double lp_norm(const ComplexField& f, double p);
double lp_norm(const RealField& f, double p);

// Synthetic fields.
ComplexField plane_wave(std::size_t n, int xi1, int xi2);
ComplexField gaussian(std::size_t n, double c1, double c2, double sigma);
ComplexField indicator(std::size_t n, double x1_lo, double x1_hi, double x2_lo, double x2_hi);
using FrequencyPredicate = std::function<bool(int xi1, int xi2)>;
ComplexField random_bandlimited(std::size_t n, std::uint64_t seed, const FrequencyPredicate& support);

bool in_open_second_quadrant(int xi1, int xi2);

// Counter-based seed derivation; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

// Elementwise helpers used across modules.
ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(cplx s, const ComplexField& a);
double max_abs_difference(const ComplexField& a, const ComplexField& b);

}  // namespace lacuna
