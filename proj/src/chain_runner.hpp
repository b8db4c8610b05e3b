#pragma once

// Internal: shared machinery for the MCMC fitters.

#include <algorithm>
#include <cmath>
#include <future>
#include <span>
#include <thread>
#include <vector>

#include "carinfo/mcmc.hpp"
#include "carinfo/rng.hpp"

namespace carinfo::detail {

/// Random-walk scale tuned on the log scale towards a target acceptance rate.
/// Tuning happens only while `adapting`; acceptance is counted only afterwards.
class AdaptiveScale {
 public:
  explicit AdaptiveScale(double initial = 1.0) : log_scale_(std::log(initial)) {}

  double scale() const { return std::exp(log_scale_); }

  void record(bool accepted, bool adapting, const AdaptationSettings& settings) {
    if (!adapting) {
      ++proposed_;
      accepted_ += accepted ? 1 : 0;
      return;
    }
    ++window_proposed_;
    window_accepted_ += accepted ? 1 : 0;
    if (window_proposed_ >= settings.window) {
      ++batches_;
      const double rate = static_cast<double>(window_accepted_) / window_proposed_;
      log_scale_ += (rate - settings.target_acceptance) / std::sqrt(static_cast<double>(batches_));
      log_scale_ = std::clamp(log_scale_, -50.0, 50.0);
      window_proposed_ = 0;
      window_accepted_ = 0;
    }
  }

  double acceptance_rate() const {
    return proposed_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(proposed_);
  }

 private:
  double log_scale_;
  int window_proposed_ = 0;
  int window_accepted_ = 0;
  long batches_ = 0;
  long proposed_ = 0;
  long accepted_ = 0;
};

/// Runs `tasks` invocations of fn(i) on up to hardware_concurrency threads and
/// returns results in index order. Exceptions propagate from the lowest index.
template <class Fn>
auto parallel_map(std::size_t tasks, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(tasks, std::thread::hardware_concurrency()));
  std::vector<std::future<Result>> pending(tasks);
  std::vector<Result> out;
  out.reserve(tasks);
  std::size_t launched = 0;
  std::size_t collected = 0;
  while (collected < tasks) {
    while (launched < tasks && launched - collected < workers) {
      pending[launched] = std::async(std::launch::async, [&fn, launched] { return fn(launched); });
      ++launched;
    }
    out.push_back(pending[collected].get());
    ++collected;
  }
  return out;
}

/// Drives `cfg.chains` independent chains. `make_chain(rng, chain_index)`
/// returns an object with sweep(RngStream&, bool adapting),
/// write(std::span<double>) const and acceptance() const.
template <class Factory>
std::vector<ChainDraws> run_chains(const McmcConfig& cfg, std::size_t width, Factory&& make_chain) {
  cfg.validate();
  const std::int64_t burn = cfg.effective_burn_in();
  const auto kept = static_cast<std::size_t>(cfg.retained_per_chain());
  return parallel_map(static_cast<std::size_t>(cfg.chains), [&](std::size_t c) {
    ChainDraws out;
    out.stream_id = RngStream::derive_stream_id(cfg.stream_id, c);
    RngStream rng(cfg.seed, out.stream_id);
    auto chain = make_chain(rng, c);
    out.values.resize(kept * width);
    std::size_t row = 0;
    for (std::int64_t t = 1; t <= cfg.iterations; ++t) {
      chain.sweep(rng, t <= burn);
      if (t > burn && (t - burn) % cfg.thin == 0 && row < kept) {
        chain.write(std::span<double>(out.values.data() + row * width, width));
        ++row;
      }
    }
    out.acceptance = chain.acceptance();
    return out;
  });
}

}  // namespace carinfo::detail
