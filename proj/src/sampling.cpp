#include "hclab/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "hclab/errors.hpp"
#include "hclab/linked.hpp"
#include "hclab/structure.hpp"

namespace hclab {

Rational SampleSummary::p_min_zero() const {
  if (n == 0) return Rational(0);
  return Rational(BigInt(min_zero_count), BigInt(n));
}

void SampleSummary::add(const VertexSet& s) {
  const std::size_t even = s.count_on(Parity::Even);
  const std::size_t odd = s.count_on(Parity::Odd);
  const VertexSet minority = s.restricted_to(even <= odd ? Parity::Even : Parity::Odd);
  const auto sizes = two_component_sizes(minority.members());
  const std::size_t cl = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  ++n;
  ++min_side_histogram[std::min(even, odd)];
  ++max_side_histogram[std::max(even, odd)];
  ++component_histogram[{sizes.size(), cl}];
  if (std::min(even, odd) == 0) ++min_zero_count;
  if (parity_gap_trace) parity_gap_trace->push_back(static_cast<long>(even) - static_cast<long>(odd));
}

void SampleSummary::merge(const SampleSummary& other) {
  n += other.n;
  min_zero_count += other.min_zero_count;
  for (const auto& [k, c] : other.min_side_histogram) min_side_histogram[k] += c;
  for (const auto& [k, c] : other.max_side_histogram) max_side_histogram[k] += c;
  for (const auto& [k, c] : other.component_histogram) component_histogram[k] += c;
  if (other.parity_gap_trace) {
    if (!parity_gap_trace) parity_gap_trace.emplace();
    parity_gap_trace->insert(parity_gap_trace->end(), other.parity_gap_trace->begin(), other.parity_gap_trace->end());
  }
}

SampleSummary summarize(std::span<const VertexSet> samples, const CubeGraph& g, bool keep_trace) {
  SampleSummary out;
  if (keep_trace) out.parity_gap_trace.emplace();
  for (const auto& s : samples) {
    if (s.dimension() != g.dimension()) throw PreconditionError("summarize: sample has the wrong dimension");
    if (!s.is_independent()) throw NotIndependentError("summarize: sample is not an independent set");
    out.add(s);
  }
  return out;
}

namespace {

VertexSet from_mask(int d, std::uint64_t mask) {
  VertexSet s(d);
  for (; mask != 0; mask &= mask - 1) s.insert(static_cast<Vertex>(std::countr_zero(mask)));
  return s;
}

}  // namespace

std::vector<VertexSet> exact_sample(int d, double lambda, std::uint64_t seed, std::size_t n) {
  if (!(lambda > 0)) throw NonpositiveLambda("lambda must be positive");
  const auto sets = enumerate_independent_sets(d);
  std::vector<double> cumulative(sets.size());
  double running = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    running += std::pow(lambda, std::popcount(sets[i]));
    cumulative[i] = running;
  }
  Rng rng(seed);
  std::vector<VertexSet> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng) * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    out.push_back(from_mask(d, sets[static_cast<std::size_t>(it - cumulative.begin())]));
  }
  return out;
}

GlauberChain::GlauberChain(int d, double lambda, std::uint64_t seed)
    : d_(d),
      p_in_(lambda / (1.0 + lambda)),
      mask_(0),
      g_(d),
      rng_(seed),
      current_(d),
      occupied_neighbours_(static_cast<std::size_t>(g_.vertex_count()), 0) {
  if (!(lambda > 0)) throw NonpositiveLambda("lambda must be positive");
  mask_ = g_.vertex_count() - 1;
}

void GlauberChain::step() {
  const Vertex v = rng_() & mask_;
  const double u = uniform01(rng_);
  ++steps_;
  if (occupied_neighbours_[v] > 0) return;  // v is blocked, hence already absent
  const bool want = u < p_in_;
  if (want == current_.contains(v)) return;
  if (want) {
    current_.insert(v);
    g_.for_each_neighbour(v, [&](Vertex w) { ++occupied_neighbours_[w]; });
  } else {
    current_.erase(v);
    g_.for_each_neighbour(v, [&](Vertex w) { --occupied_neighbours_[w]; });
  }
  assert(current_.is_independent());
}

void GlauberChain::run(std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i) step();
}

Estimate batch_means(std::span<const double> series, std::size_t batches) {
  Estimate e;
  if (series.empty()) return e;
  double total = 0.0;
  for (double x : series) total += x;
  e.mean = total / static_cast<double>(series.size());
  batches = std::min(batches, series.size());
  const std::size_t len = series.size() / batches;
  if (batches < 2 || len == 0) return e;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) means[b] += series[i];
    means[b] /= static_cast<double>(len);
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(batches);
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(batches - 1);
  e.standard_error = std::sqrt(var / static_cast<double>(batches));
  return e;
}

GlauberResult glauber_run(int d, double lambda, std::uint64_t seed, const GlauberOptions& opts) {
  GlauberChain chain(d, lambda, seed);
  const std::uint64_t size = chain.current().bits().size();
  GlauberResult r;
  r.burn_in = opts.burn_in.value_or(100 * static_cast<std::uint64_t>(d) * size);
  r.thin = std::max<std::uint64_t>(1, opts.thin.value_or(size));
  if (opts.keep_trace) r.summary.parity_gap_trace.emplace();

  chain.run(r.burn_in);
  std::vector<double> occ, empty, density;
  occ.reserve(opts.samples);
  empty.reserve(opts.samples);
  density.reserve(opts.samples);
  for (std::uint64_t i = 0; i < opts.samples; ++i) {
    chain.run(r.thin);
    const VertexSet& s = chain.current();
    r.summary.add(s);
    if (opts.keep_samples) r.samples.push_back(s);
    occ.push_back(s.contains(0) ? 1.0 : 0.0);
    empty.push_back(s.empty() ? 1.0 : 0.0);
    density.push_back(static_cast<double>(s.size()) / static_cast<double>(size));
  }
  r.occupancy_vertex0 = batch_means(occ);
  r.empty_set = batch_means(empty);
  r.density = batch_means(density);
  return r;
}

TransitionModel transition_model(int d, double lambda) {
  if (d > 3) throw DimensionTooLarge("transition matrices are limited to d <= 3");
  if (!(lambda > 0)) throw NonpositiveLambda("lambda must be positive");
  const CubeGraph g(d);
  TransitionModel m;
  m.states = enumerate_independent_sets(d);
  const auto count = static_cast<Eigen::Index>(m.states.size());
  std::map<std::uint64_t, Eigen::Index> index;
  for (Eigen::Index i = 0; i < count; ++i) index[m.states[static_cast<std::size_t>(i)]] = i;

  const double n = static_cast<double>(g.vertex_count());
  const double p_in = lambda / (1.0 + lambda);
  m.transition = Eigen::MatrixXd::Zero(count, count);
  m.stationary.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const std::uint64_t s = m.states[static_cast<std::size_t>(i)];
    m.stationary(i) = std::pow(lambda, std::popcount(s));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      bool blocked = false;
      g.for_each_neighbour(v, [&](Vertex w) { blocked = blocked || ((s >> w) & 1); });
      if (blocked) {
        m.transition(i, i) += 1.0 / n;
        continue;
      }
      const std::uint64_t with = s | std::uint64_t{1} << v;
      const std::uint64_t without = s & ~(std::uint64_t{1} << v);
      m.transition(i, index.at(with)) += p_in / n;
      m.transition(i, index.at(without)) += (1.0 - p_in) / n;
    }
  }
  m.stationary /= m.stationary.sum();
  return m;
}

double detailed_balance_residual(const TransitionModel& m) {
  const Eigen::MatrixXd flow = m.stationary.asDiagonal() * m.transition;
  return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  double total = 0.0;
  for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    total += std::abs(a - b);
  }
  return total / 2.0;
}

double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw PreconditionError("chi-square needs matching vectors of length >= 2");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0)) throw PreconditionError("chi-square expected counts must be positive");
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

void write_sample_dump(std::ostream& out, int d, const std::string& lambda_text, std::uint64_t seed,
                       std::span<const VertexSet> samples) {
  out << "d=" << d << " lambda=" << lambda_text << " seed=" << seed << '\n';
  for (const auto& s : samples) out << s.bits().to_hex() << '\n';
  if (!out) throw IoError("failed writing sample dump");
}

SampleDump read_sample_dump(std::istream& in) {
  SampleDump dump;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("sample dump is empty");
  std::istringstream header(line);
  std::string dtok, ltok, stok;
  header >> dtok >> ltok >> stok;
  if (dtok.rfind("d=", 0) != 0 || ltok.rfind("lambda=", 0) != 0 || stok.rfind("seed=", 0) != 0)
    throw ParseError("sample dump header must be 'd=<d> lambda=<decimal> seed=<int>'");
  try {
    dump.d = std::stoi(dtok.substr(2));
    dump.seed = std::stoull(stok.substr(5));
  } catch (const std::exception&) {
    throw ParseError("sample dump header has a malformed number");
  }
  dump.lambda_text = ltok.substr(7);
  const CubeGraph g(dump.d);
  while (std::getline(in, line)) {
    VertexSet s(dump.d, Bitset::from_hex(line, static_cast<std::size_t>(g.vertex_count())));
    dump.samples.push_back(std::move(s));
  }
  return dump;
}

}  // namespace hclab
