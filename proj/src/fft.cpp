#include "fracshear/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace fracshear {

namespace {

// FFTW planning is not thread-safe; execution through the new-array interface is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n0, std::size_t n1, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n0, n1, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = n0 * (n1 == 0 ? 1 : n1);
    auto* buf = fftw_alloc_complex(total);
    fftw_plan p = n1 == 0 ? fftw_plan_dft_1d(static_cast<int>(n0), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                          : fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), buf, buf, sign,
                                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

void execute(std::vector<cplx>& data, std::size_t n0, std::size_t n1, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(PlanCache::instance().get(n0, n1, sign), ptr, ptr);
}

double parity(std::size_t i) { return (i & 1u) ? -1.0 : 1.0; }

}  // namespace

std::vector<cplx> to_physical_complex(const SpectralField2D& f) {
  const auto& g = f.grid();
  std::vector<cplx> data(f.coeffs());
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) data[i * g.ny() + j] *= parity(i + j);
  execute(data, g.nx(), g.ny(), FFTW_BACKWARD);
  return data;
}

SpectralField2D to_spectral_complex(const TorusGrid& grid, std::span<const cplx> samples) {
  std::vector<cplx> data(samples.begin(), samples.end());
  execute(data, grid.nx(), grid.ny(), FFTW_FORWARD);
  const double inv = 1.0 / static_cast<double>(grid.size());
  for (std::size_t i = 0; i < grid.nx(); ++i)
    for (std::size_t j = 0; j < grid.ny(); ++j) data[i * grid.ny() + j] *= inv * parity(i + j);
  return SpectralField2D(grid, std::move(data));
}

PhysicalField2D to_physical(const SpectralField2D& f) {
  const auto data = to_physical_complex(f);
  PhysicalField2D out(f.grid());
  for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i].real();
  return out;
}

SpectralField2D to_spectral(const PhysicalField2D& f) {
  std::vector<cplx> data(f.values.begin(), f.values.end());
  return to_spectral_complex(f.grid, data);
}

PhysicalField1D to_physical(const SpectralField1D& f) {
  std::vector<cplx> data(f.coeffs());
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= parity(j);
  execute(data, f.ny(), 0, FFTW_BACKWARD);
  PhysicalField1D out(f.ny());
  for (std::size_t j = 0; j < data.size(); ++j) out.values[j] = data[j].real();
  return out;
}

SpectralField1D to_spectral(const PhysicalField1D& f) {
  std::vector<cplx> data(f.values.begin(), f.values.end());
  execute(data, f.ny(), 0, FFTW_FORWARD);
  const double inv = 1.0 / static_cast<double>(f.ny());
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= inv * parity(j);
  return SpectralField1D(f.ny(), std::move(data));
}

}  // namespace fracshear
