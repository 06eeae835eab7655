#include "hartree/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "hartree/error.hpp"

namespace hartree::fft {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = dim == 1 ? n : n * n;
    std::vector<std::complex<double>> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dim == 1
                         ? fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, flags)
                         : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf, sign, flags);
    if (plan == nullptr) throw Error("FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(const Grid& grid, std::span<std::complex<double>> data, int sign) {
  if (data.size() != grid.size()) throw Error("fft: buffer size does not match grid");
  fftw_plan plan = cache().get(grid.dim, grid.n, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward(const Grid& grid, std::span<std::complex<double>> data) { execute(grid, data, FFTW_FORWARD); }

void inverse(const Grid& grid, std::span<std::complex<double>> data) { execute(grid, data, FFTW_BACKWARD); }

}  // namespace hartree::fft
