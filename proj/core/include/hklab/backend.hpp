#pragma once

#include <string>

namespace hklab {

/// Kernel name reported by OpenBLAS, e.g. "Haswell".
std::string blas_core_name();

/// Compares one 256x256 BLAS dgemm against a plain loop.  Computed once per
/// process.
bool blas_backend_ok();

/// Throws std::runtime_error if blas_backend_ok() is false.
void require_blas_backend();

/// Some OpenBLAS 0.3.20 builds select a Cooperlake dgemm kernel that returns
/// wrong products.  If the self-check fails and OPENBLAS_CORETYPE is unset,
/// this sets it to a working kernel and re-executes the current process
/// (Linux only).  Otherwise it returns without doing anything.
void reexec_with_working_blas(char** argv);

}  // namespace hklab
