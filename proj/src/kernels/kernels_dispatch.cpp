#include "kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace squall::kernels {

namespace {

const Ops* g_active = nullptr;

const Ops* detect() {
  if (const char* env = std::getenv("SQUALL_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return &avx2_ops();
  }
  return avx2_available() ? &avx2_ops() : &scalar_ops();
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops& ops() {
  if (!g_active) g_active = detect();
  return *g_active;
}

bool force_backend(const char* name) {
  if (!name) {
    g_active = detect();
    return true;
  }
  if (std::strcmp(name, "scalar") == 0) {
    g_active = &scalar_ops();
    return true;
  }
  if (std::strcmp(name, "avx2") == 0 && avx2_available()) {
    g_active = &avx2_ops();
    return true;
  }
  return false;
}

}  // namespace squall::kernels
