#include <fftw3.h>

#include <map>
#include <mutex>

#include "lacuna/field.hpp"

namespace lacuna {

namespace {

struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// FFTW planning is not thread-safe; execution with new arrays is.
// FFTW_ESTIMATE keeps the chosen algorithm, and hence every bit of output,
// identical from run to run.
const Plans& plans_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Buffer a(n * n), b(n * n);
  auto* in = reinterpret_cast<fftw_complex*>(a.data());
  auto* out = reinterpret_cast<fftw_complex*>(b.data());
  const int ni = static_cast<int>(n);
  Plans p;
  p.fwd = fftw_plan_dft_2d(ni, ni, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(ni, ni, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

SpectralField forward(const ComplexField& f) {
  const std::size_t n = f.size();
  Buffer out(n * n);
  Buffer in(f.values().begin(), f.values().end());
  fftw_execute_dft(plans_for(n).fwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(n * n);
  for (auto& z : out) z *= scale;
  return SpectralField(n, std::move(out));
}

ComplexField inverse(const SpectralField& s) {
  const std::size_t n = s.size();
  Buffer out(n * n);
  Buffer in(s.values().begin(), s.values().end());
  fftw_execute_dft(plans_for(n).bwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return ComplexField(n, std::move(out));
}

}  // namespace lacuna
