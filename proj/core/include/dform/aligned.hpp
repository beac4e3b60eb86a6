#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

#include <fftw3.h>

namespace dform {

/// Allocator handing out FFTW-aligned storage so buffers can be passed to
/// plans created on other buffers (fftw_execute_dft_* new-array interface).
template <typename T>
struct FftwAllocator {
    using value_type = T;

    FftwAllocator() noexcept = default;
    template <typename U>
    FftwAllocator(const FftwAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        void* p = fftw_malloc(n * sizeof(T));
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

    template <typename U>
    bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

template <typename T>
using AlignedVector = std::vector<T, FftwAllocator<T>>;

using Complex = std::complex<double>;

}  // namespace dform
