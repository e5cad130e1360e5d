#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hclab/cube.hpp"
#include "hclab/numeric.hpp"
#include "hclab/random.hpp"

namespace hclab {

/// Histograms over a batch of independent sets; merges associatively.
struct SampleSummary {
  std::uint64_t n = 0;
  std::map<std::size_t, std::uint64_t> min_side_histogram;
  std::map<std::size_t, std::uint64_t> max_side_histogram;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> component_histogram;  // (k, cl)
  std::uint64_t min_zero_count = 0;
  std::optional<std::vector<long>> parity_gap_trace;

  Rational p_min_zero() const;
  void add(const VertexSet& s);
  void merge(const SampleSummary& other);
};

/// Throws NotIndependentError on a sample with an edge.
SampleSummary summarize(std::span<const VertexSet> samples, const CubeGraph& g, bool keep_trace = false);

/// n draws from hc(lambda) by cumulative-weight inversion over all independent sets (d <= 5).
std::vector<VertexSet> exact_sample(int d, double lambda, std::uint64_t seed, std::size_t n);

/// Single-site heat-bath chain started from the empty set.
class GlauberChain {
 public:
  GlauberChain(int d, double lambda, std::uint64_t seed);

  void step();
  void run(std::uint64_t steps);

  int dimension() const noexcept { return d_; }
  const VertexSet& current() const noexcept { return current_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }

 private:
  int d_;
  double p_in_;
  Vertex mask_;
  CubeGraph g_;
  Rng rng_;
  VertexSet current_;
  std::vector<std::uint32_t> occupied_neighbours_;
  std::uint64_t steps_ = 0;
};

/// Mean with a batch-means standard error.
struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

Estimate batch_means(std::span<const double> series, std::size_t batches = 50);

struct GlauberOptions {
  std::optional<std::uint64_t> burn_in;  // default 100 * d * 2^d
  std::optional<std::uint64_t> thin;     // default 2^d
  std::uint64_t samples = 1000;
  bool keep_trace = false;
  bool keep_samples = false;
};

struct GlauberResult {
  SampleSummary summary;
  std::uint64_t burn_in = 0;
  std::uint64_t thin = 0;
  Estimate occupancy_vertex0;  // P(0 ∈ I)
  Estimate empty_set;          // P(I = ∅)
  Estimate density;            // E|I| / 2^d
  std::vector<VertexSet> samples;  // only with keep_samples
};

GlauberResult glauber_run(int d, double lambda, std::uint64_t seed, const GlauberOptions& opts);

/// Heat-bath transition matrix over the independent sets of Q_d (d <= 3), states in DFS order.
struct TransitionModel {
  std::vector<std::uint64_t> states;
  Eigen::MatrixXd transition;
  Eigen::VectorXd stationary;  // proportional to lambda^{|I|}, normalised
};

TransitionModel transition_model(int d, double lambda);
// max over pairs of |pi(I)P(I,J) - pi(J)P(J,I)|.
double detailed_balance_residual(const TransitionModel& m);

double tv_distance(std::span<const double> p, std::span<const double> q);
// Upper-tail p-value of Pearson's statistic; expected counts must be positive.
double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected);

// Dump: header "d=<d> lambda=<decimal> seed=<int>", then one hex bitmask per sample (vertex v is bit v).
void write_sample_dump(std::ostream& out, int d, const std::string& lambda_text, std::uint64_t seed,
                       std::span<const VertexSet> samples);
struct SampleDump {
  int d = 0;
  std::string lambda_text;
  std::uint64_t seed = 0;
  std::vector<VertexSet> samples;
};
SampleDump read_sample_dump(std::istream& in);

}  // namespace hclab
