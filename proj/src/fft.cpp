#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace hjlab::fft {
namespace {

enum class Kind { kForward2d, kInverse2d, kForward1d, kInverse1d };

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<Kind, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(Kind kind, int n) {
    std::lock_guard lock(mutex);
    auto it = plans.find({kind, n});
    if (it != plans.end()) return it->second;

    const int real_size = (kind == Kind::kForward2d || kind == Kind::kInverse2d) ? n * n : n;
    const int half_size =
        (kind == Kind::kForward2d || kind == Kind::kInverse2d) ? n * (n / 2 + 1) : n / 2 + 1;
    auto* real = fftw_alloc_real(real_size);
    auto* cplx = fftw_alloc_complex(half_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    switch (kind) {
      case Kind::kForward2d: plan = fftw_plan_dft_r2c_2d(n, n, real, cplx, flags); break;
      case Kind::kInverse2d:
        plan = fftw_plan_dft_c2r_2d(n, n, cplx, real, flags | FFTW_DESTROY_INPUT);
        break;
      case Kind::kForward1d: plan = fftw_plan_dft_r2c_1d(n, real, cplx, flags); break;
      case Kind::kInverse1d:
        plan = fftw_plan_dft_c2r_1d(n, cplx, real, flags | FFTW_DESTROY_INPUT);
        break;
    }
    fftw_free(real);
    fftw_free(cplx);
    plans.emplace(std::pair{kind, n}, plan);
    return plan;
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void forward_2d(int n, const double* in, Complex* out) {
  fftw_execute_dft_r2c(cache().get(Kind::kForward2d, n), const_cast<double*>(in), as_fftw(out));
}

void inverse_2d(int n, const Complex* in, double* out) {
  // c2r overwrites its input.
  std::vector<Complex> scratch(in, in + static_cast<std::size_t>(n) * (n / 2 + 1));
  fftw_execute_dft_c2r(cache().get(Kind::kInverse2d, n), as_fftw(scratch.data()), out);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (int k = 0; k < n * n; ++k) out[k] *= scale;
}

void forward_1d(int n, const double* in, Complex* out) {
  fftw_execute_dft_r2c(cache().get(Kind::kForward1d, n), const_cast<double*>(in), as_fftw(out));
}

void inverse_1d(int n, const Complex* in, double* out) {
  std::vector<Complex> scratch(in, in + n / 2 + 1);
  fftw_execute_dft_c2r(cache().get(Kind::kInverse1d, n), as_fftw(scratch.data()), out);
  const double scale = 1.0 / n;
  for (int k = 0; k < n; ++k) out[k] *= scale;
}

}  // namespace hjlab::fft
