#pragma once

// Black-box +-1 labelers. Oracles are immutable after construction except for
// a shared call counter (relaxed atomic; copies of an oracle count together).

#include <atomic>
#include <cmath>
#include <cstring>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "htester/halfspace.hpp"
#include "htester/rng.hpp"

namespace htester {

class FunctionOracle {
 public:
  enum class Kind { Halfspace, ShellFlip, Noisy, Constant, Custom };

  static FunctionOracle halfspace(HalfspaceSpec h) {
    FunctionOracle f(Kind::Halfspace, h.dim());
    f.halfspace_ = std::make_shared<HalfspaceSpec>(std::move(h));
    return f;
  }

  // h on the distribution except the labels flip on shells whose radius
  // matches one of flip_radii (relative tolerance rel_tol).
  static FunctionOracle shell_flip(HalfspaceSpec h, std::vector<double> radii,
                                   double rel_tol = 1e-9) {
    FunctionOracle f(Kind::ShellFlip, h.dim());
    f.halfspace_ = std::make_shared<HalfspaceSpec>(std::move(h));
    f.flip_radii_ = std::make_shared<std::vector<double>>(std::move(radii));
    f.flip_tol_ = rel_tol;
    return f;
  }

  // Flips the base label with probability `rate`. The coin is a hash of
  // (seed, bits of x), so repeated queries at the same point agree.
  static FunctionOracle noisy(FunctionOracle base, double rate,
                              std::uint64_t seed) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw std::invalid_argument("noisy: rate in [0,1]");
    }
    FunctionOracle f(Kind::Noisy, base.dim());
    f.base_ = std::make_shared<FunctionOracle>(std::move(base));
    f.noise_rate_ = rate;
    f.noise_seed_ = seed;
    return f;
  }

  static FunctionOracle constant(int dim, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("constant: +-1");
    FunctionOracle f(Kind::Constant, dim);
    f.const_sign_ = sign;
    return f;
  }

  static FunctionOracle custom(int dim,
                               std::function<int(std::span<const double>)> fn) {
    FunctionOracle f(Kind::Custom, dim);
    f.custom_ = std::make_shared<std::function<int(std::span<const double>)>>(
        std::move(fn));
    return f;
  }

  int operator()(std::span<const double> x) const {
    if (int(x.size()) != dim_) {
      throw std::invalid_argument("oracle: dimension mismatch");
    }
    calls_->fetch_add(1, std::memory_order_relaxed);
    return eval_nocount(x);
  }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::uint64_t calls() const { return calls_->load(std::memory_order_relaxed); }

  // Present for halfspace and shell-flip kinds.
  const HalfspaceSpec* as_halfspace() const {
    return kind_ == Kind::Halfspace ? halfspace_.get() : nullptr;
  }
  const HalfspaceSpec* base_halfspace() const { return halfspace_.get(); }

 private:
  FunctionOracle(Kind k, int dim) : kind_(k), dim_(dim) {
    calls_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  }

  int eval_nocount(std::span<const double> x) const {
    switch (kind_) {
      case Kind::Constant:
        return const_sign_;
      case Kind::Halfspace:
        return halfspace_->eval(x);
      case Kind::ShellFlip: {
        const int h = halfspace_->eval(x);
        const double r = norm(x);
        for (double fr : *flip_radii_) {
          if (std::fabs(r - fr) <= flip_tol_ * std::max(1.0, std::fabs(fr))) {
            return -h;
          }
        }
        return h;
      }
      case Kind::Noisy: {
        const int b = base_->eval_nocount(x);
        std::uint64_t h = noise_seed_ ^ 0x5bf03635d8e1e6bcULL;
        for (double c : x) {
          std::uint64_t bits;
          std::memcpy(&bits, &c, sizeof bits);
          h = hash_u64(h, bits);
        }
        const double u = double(h >> 11) * 0x1.0p-53;
        return u < noise_rate_ ? -b : b;
      }
      case Kind::Custom:
        return (*custom_)(x);
    }
    return 1;
  }

  Kind kind_;
  int dim_;
  std::shared_ptr<HalfspaceSpec> halfspace_;
  std::shared_ptr<std::vector<double>> flip_radii_;
  double flip_tol_ = 1e-9;
  std::shared_ptr<FunctionOracle> base_;
  double noise_rate_ = 0.0;
  std::uint64_t noise_seed_ = 0;
  int const_sign_ = 1;
  std::shared_ptr<std::function<int(std::span<const double>)>> custom_;
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

}  // namespace htester
