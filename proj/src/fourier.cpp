#include "qif/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace qif::detail {
namespace {

// FFTW planning is not thread-safe, execution with the new-array API is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, FftDirection direction) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, direction);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, FftDirection>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

void fft_in_place(std::span<std::complex<double>> data, FftDirection direction) {
    if (data.empty()) return;
    fftw_plan plan = plan_cache().get(static_cast<int>(data.size()), direction);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace qif::detail
