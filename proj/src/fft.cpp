#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace relax {

namespace {

struct PlanCache {
  std::mutex mtx;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t total = (dim == 1) ? static_cast<std::size_t>(n)
                                   : static_cast<std::size_t>(n) * n;
    // FFTW_ESTIMATE keeps plan selection independent of runtime timings,
    // which keeps outputs bit-reproducible across invocations.
    std::vector<std::complex<double>> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = (dim == 1)
                      ? fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                      : fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft(int dim, int n, std::complex<double>* data, int sign) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dft: dim must be 1 or 2");
  fftw_plan p = cache().get(dim, n, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, buf, buf);
}

}  // namespace relax
