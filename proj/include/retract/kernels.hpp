#pragma once

#include <cstddef>
#include <cstdint>

// Edge-stretch evaluation under the cycle metric: max_i min(|a_i-b_i|, k-|a_i-b_i|).
// a and b hold anchor indices in [0,k).
namespace retract::kernels {

std::int32_t max_cycle_stretch_scalar(const std::int32_t* a, const std::int32_t* b, std::size_t m, std::int32_t k);
std::int32_t max_cycle_stretch_avx2(const std::int32_t* a, const std::int32_t* b, std::size_t m, std::int32_t k);

bool avx2_available();
// picks the AVX2 variant when the cpu has it
std::int32_t max_cycle_stretch(const std::int32_t* a, const std::int32_t* b, std::size_t m, std::int32_t k);

}  // namespace retract::kernels
