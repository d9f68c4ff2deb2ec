#include "lamelab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace lamelab::fourier {
namespace {

// The FFTW planner is not thread-safe; execution of a finished plan is.
std::mutex planner_mutex;

fftw_plan plan_for(int d, int n, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> plans;
    std::lock_guard lock(planner_mutex);
    auto key = std::make_tuple(d, n, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;

    std::vector<int> dims(static_cast<size_t>(d), n);
    size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<size_t>(n);
    std::vector<cplx> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft(d, dims.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
}

void execute(std::span<cplx> data, int d, int n, int sign) {
    fftw_plan p = plan_for(d, n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void forward(std::span<cplx> data, int d, int n) { execute(data, d, n, FFTW_FORWARD); }

void inverse(std::span<cplx> data, int d, int n) {
    execute(data, d, n, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& z : data) z *= scale;
}

std::vector<double> axis_wavenumbers(int n, double h, bool zero_nyquist) {
    std::vector<double> xi(static_cast<size_t>(n));
    const double base = 2.0 * std::numbers::pi / (n * h);
    for (int j = 0; j < n; ++j) {
        int m = j < n / 2 ? j : j - n;
        xi[static_cast<size_t>(j)] = base * m;
    }
    if (zero_nyquist) xi[static_cast<size_t>(n / 2)] = 0.0;
    return xi;
}

}  // namespace lamelab::fourier
