#pragma once

// The tester's view of the world: a stream of labeled samples (x, f(x)).
// RI-Tester takes only a SampleSource; it never sees distribution parameters.

#include <cstdint>
#include <memory>
#include <vector>

#include "htester/oracle.hpp"
#include "htester/ri_distribution.hpp"

namespace htester {

struct LabeledSample {
  Vec x;
  int label = 1;
};

using LabeledSampleSet = std::vector<LabeledSample>;

class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual int dim() const = 0;
  // Fills x, returns the label, and counts one consumed sample.
  virtual int draw(Vec& x, RngStream& rng) = 0;
  virtual std::uint64_t drawn() const = 0;
};

class OracleSampleSource final : public SampleSource {
 public:
  OracleSampleSource(RIDistribution dist, FunctionOracle oracle)
      : dist_(std::move(dist)), oracle_(std::move(oracle)) {
    if (dist_.dim != oracle_.dim()) {
      throw std::invalid_argument("sample source: dimension mismatch");
    }
  }

  int dim() const override { return dist_.dim; }

  int draw(Vec& x, RngStream& rng) override {
    sample_ri(dist_, rng, x);
    ++count_;
    return oracle_(x);
  }

  std::uint64_t drawn() const override { return count_; }

  const FunctionOracle& oracle() const { return oracle_; }

 private:
  RIDistribution dist_;
  FunctionOracle oracle_;
  std::uint64_t count_ = 0;
};

inline LabeledSampleSet materialize(SampleSource& src, std::uint64_t m,
                                    RngStream& rng) {
  LabeledSampleSet out;
  out.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    LabeledSample s;
    s.label = src.draw(s.x, rng);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace htester
