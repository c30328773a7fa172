#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace spider::kernels {

namespace {

#if defined(SPIDER_HAVE_X86_KERNELS)
bool cpu_has_bmi2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("bmi") && __builtin_cpu_supports("bmi2");
}

bool cpu_has_avx2() noexcept { return cpu_has_bmi2() && __builtin_cpu_supports("avx2"); }

// pdep/pext are microcoded on these cores and lose to the broadword path.
bool cpu_has_slow_pdep() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_is("znver1") || __builtin_cpu_is("znver2");
}
#endif

const kernel_set& select_best() noexcept {
  if (const char* forced = std::getenv("SPIDER_KERNELS")) {
    const std::string_view name{forced};
    for (const kernel_set* set : available()) {
      if (set->name == name) return *set;
    }
  }
#if defined(SPIDER_HAVE_X86_KERNELS)
  if (cpu_has_slow_pdep()) return portable();
#endif
  if (const kernel_set* set = avx2()) return *set;
  if (const kernel_set* set = bmi2()) return *set;
  return portable();
}

}  // namespace

const kernel_set* bmi2() noexcept {
#if defined(SPIDER_HAVE_X86_KERNELS)
  static const bool supported = cpu_has_bmi2();
  return supported ? &bmi2_set() : nullptr;
#else
  return nullptr;
#endif
}

const kernel_set* avx2() noexcept {
#if defined(SPIDER_HAVE_X86_KERNELS)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const kernel_set*> available() {
  std::vector<const kernel_set*> sets{&portable()};
  if (const kernel_set* set = bmi2()) sets.push_back(set);
  if (const kernel_set* set = avx2()) sets.push_back(set);
  return sets;
}

const kernel_set& best() noexcept {
  static const kernel_set& chosen = select_best();
  return chosen;
}

const kernel_set& by_name(std::string_view name) {
  for (const kernel_set* set : available()) {
    if (set->name == name) return *set;
  }
  throw std::invalid_argument("unknown or unsupported kernel set: " + std::string(name));
}

}  // namespace spider::kernels
