#include "dform/fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace dform {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

// Per-thread scratch for the c2r input (FFTW destroys it).
std::span<Complex> c2r_scratch(int n) {
    thread_local std::map<int, AlignedVector<Complex>> buffers;
    auto& buf = buffers[n];
    const auto need = static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
    if (buf.size() != need) buf.assign(need, Complex{});
    return buf;
}

}  // namespace

FourierTransform::FourierTransform(int n) : n_(n) {
    const auto real_size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    const auto spec_size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
    AlignedVector<double> r(real_size);
    AlignedVector<Complex> c(spec_size);
    forward_ = fftw_plan_dft_r2c_2d(n, n, r.data(), as_fftw(c.data()), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_2d(n, n, as_fftw(c.data()), r.data(), FFTW_ESTIMATE);
    if (!forward_ || !backward_) throw std::runtime_error("FFTW plan creation failed");
}

FourierTransform::~FourierTransform() {
    std::lock_guard lock(planner_mutex());
    if (forward_) fftw_destroy_plan(forward_);
    if (backward_) fftw_destroy_plan(backward_);
}

const FourierTransform& FourierTransform::get(int n) {
    static std::map<int, std::unique_ptr<FourierTransform>> cache;
    std::lock_guard lock(planner_mutex());
    auto it = cache.find(n);
    if (it == cache.end()) {
        if (n < 2 || n % 2 != 0) throw std::invalid_argument("transform size must be even");
        it = cache.emplace(n, std::unique_ptr<FourierTransform>(new FourierTransform(n))).first;
    }
    return *it->second;
}

void FourierTransform::to_physical(std::span<const Complex> coeff, std::span<double> out) const {
    auto scratch = c2r_scratch(n_);
    if (coeff.size() != scratch.size() || out.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("to_physical: size mismatch");
    if (fftw_alignment_of(out.data()) != 0) throw std::invalid_argument("to_physical: unaligned output");
    std::copy(coeff.begin(), coeff.end(), scratch.begin());
    fftw_execute_dft_c2r(backward_, as_fftw(scratch.data()), out.data());
}

void FourierTransform::to_spectral(std::span<const double> in, std::span<Complex> out) const {
    const auto real_size = static_cast<std::size_t>(n_) * n_;
    if (in.size() != real_size || out.size() != static_cast<std::size_t>(n_) * (n_ / 2 + 1))
        throw std::invalid_argument("to_spectral: size mismatch");
    if (fftw_alignment_of(const_cast<double*>(in.data())) != 0 ||
        fftw_alignment_of(reinterpret_cast<double*>(out.data())) != 0)
        throw std::invalid_argument("to_spectral: unaligned buffers");
    // r2c does not touch its input, but the plan signature is non-const.
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in.data()), as_fftw(out.data()));
    const double scale = 1.0 / static_cast<double>(real_size);
    for (auto& c : out) c *= scale;
}

void complex_dft_2d(int m, int sign, std::span<Complex> data) {
    const auto total = static_cast<std::size_t>(m) * m;
    if (data.size() != total) throw std::invalid_argument("complex_dft_2d: size mismatch");

    static std::map<std::pair<int, int>, fftw_plan> plans;
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        auto& p = plans[{m, sign}];
        if (!p) {
            AlignedVector<Complex> tmp(total);
            p = fftw_plan_dft_2d(m, m, as_fftw(tmp.data()), as_fftw(tmp.data()), sign, FFTW_ESTIMATE);
            if (!p) throw std::runtime_error("FFTW plan creation failed");
        }
        plan = p;
    }
    thread_local AlignedVector<Complex> scratch;
    scratch.assign(data.begin(), data.end());
    fftw_execute_dft(plan, as_fftw(scratch.data()), as_fftw(scratch.data()));
    std::copy(scratch.begin(), scratch.end(), data.begin());
}

}  // namespace dform
