#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace cesaro::detail {

namespace {

// FFTW planning is not thread-safe; execution with fftw_execute_dft is.
struct PlanCache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans;

    ~PlanCache() {
        for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex);
        auto it = plans.find({n, sign});
        if (it != plans.end()) return it->second;
        std::vector<std::complex<double>> scratch(n);
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p,
                                          sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans.emplace(std::make_pair(n, sign), plan);
        return plan;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void dft(std::vector<std::complex<double>>& data, int sign) {
    if (data.size() <= 1) return;
    fftw_plan plan = cache().get(data.size(), sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

} // namespace cesaro::detail
