#include "hnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace hnls::fft {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW planning is not thread safe; execution through the new-array
// interface is. Plans live for the whole process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int size = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair pair;
    pair.forward = fftw_plan_dft_1d(size, buf, buf, FFTW_FORWARD, flags);
    pair.backward = fftw_plan_dft_1d(size, buf, buf, FFTW_BACKWARD, flags);
    return plans_.emplace(n, pair).first->second;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [n, pair] : plans_) {
      fftw_destroy_plan(pair.forward);
      fftw_destroy_plan(pair.backward);
    }
  }

  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

void execute(fftw_plan plan, std::span<Complex> data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward(std::span<Complex> data) {
  if (data.empty()) return;
  execute(PlanCache::instance().get(data.size()).forward, data);
}

void backward(std::span<Complex> data) {
  if (data.empty()) return;
  execute(PlanCache::instance().get(data.size()).backward, data);
}

}  // namespace hnls::fft
