#include "chainlab/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace chainlab {

namespace {
// FFTW's planner is not thread-safe; execution on plan-local buffers is fine.
std::mutex planner_mutex;
}  // namespace

void fft(std::vector<std::complex<double>>& data, int sign) {
    const int n = static_cast<int>(data.size());
    if (n == 0) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, buf, buf,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

std::vector<std::complex<double>> fft_forward(const std::vector<double>& x) {
    std::vector<std::complex<double>> c(x.begin(), x.end());
    fft(c, -1);
    return c;
}

std::vector<double> fft_backward_real(std::vector<std::complex<double>> spectrum) {
    const auto n = spectrum.size();
    fft(spectrum, +1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = spectrum[i].real() / static_cast<double>(n);
    return out;
}

}  // namespace chainlab
