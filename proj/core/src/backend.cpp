#include "hklab/backend.hpp"

#include <cblas.h>
#include <unistd.h>

#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hklab {

std::string blas_core_name() {
  const char* name = openblas_get_corename();
  return name ? name : "";
}

bool blas_backend_ok() {
  static std::once_flag once;
  static bool ok = false;
  std::call_once(once, [] {
    constexpr int n = 256;
    std::vector<double> a(n * n), b(n * n), c(n * n, 0.0);
    for (int i = 0; i < n * n; ++i) {
      a[static_cast<std::size_t>(i)] = static_cast<double>((i * 37) % 101) / 50.0 - 1.0;
      b[static_cast<std::size_t>(i)] = static_cast<double>((i * 53) % 97) / 48.0 - 1.0;
    }
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0, a.data(), n, b.data(), n, 0.0, c.data(), n);
    double worst = 0.0;
    for (int j = 0; j < n; j += 17) {
      for (int i = 0; i < n; ++i) {
        double ref = 0.0;
        for (int k = 0; k < n; ++k) ref += a[static_cast<std::size_t>(k * n + i)] * b[static_cast<std::size_t>(j * n + k)];
        worst = std::max(worst, std::abs(ref - c[static_cast<std::size_t>(j * n + i)]));
      }
    }
    ok = worst < 1e-9;
  });
  return ok;
}

void require_blas_backend() {
  if (!blas_backend_ok()) {
    throw std::runtime_error("the BLAS kernel '" + blas_core_name() +
                             "' fails a dgemm self-check; set OPENBLAS_CORETYPE=Haswell (or SkylakeX) and rerun");
  }
}

void reexec_with_working_blas(char** argv) {
  if (blas_backend_ok() || std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
  const std::string fallback = blas_core_name() == "Cooperlake" ? "SkylakeX" : "Haswell";
  ::setenv("OPENBLAS_CORETYPE", fallback.c_str(), 1);
  ::execv("/proc/self/exe", argv);
  // execv only returns on failure; the library will report the bad kernel
}

}  // namespace hklab
