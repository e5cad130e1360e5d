#include "hclab/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hclab/errors.hpp"

namespace hclab {

namespace {

double binomial_double(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

// Calls f(indices) for every increasing k-tuple drawn from [0, n).
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

class Scanner {
 public:
  Scanner(const CubeGraph& g, std::size_t size) : g_(g), size_(size) {
    result_.size = size;
    result_.min_boundary = UINT64_MAX;
    result_.lemma10_margin = INT64_MAX;
  }

  void visit(std::span<const Vertex> members) {
    const auto d = static_cast<std::uint64_t>(g_.dimension());
    const auto s = static_cast<std::uint64_t>(size_);
    const auto b = static_cast<std::uint64_t>(neighborhood_size(g_, members));
    ++result_.scanned;
    if (b < result_.min_boundary) {
      result_.min_boundary = b;
      result_.witness.assign(members.begin(), members.end());
    }
    if (10 * s <= d) {
      const auto rhs = static_cast<std::int64_t>(d * s) - 2 * static_cast<std::int64_t>(s * (s - 1));
      if (static_cast<std::int64_t>(b) < rhs) result_.lemma9_ok = false;
    }
    if (d >= 2 && s <= (std::uint64_t{1} << (d - 2))) {
      const auto margin = static_cast<std::int64_t>(b) - static_cast<std::int64_t>(s);
      if (margin <= 0) result_.lemma10_ok = false;
      result_.lemma10_margin = std::min(result_.lemma10_margin, margin);
    }
    if (b > 0) result_.empirical_c_iso = std::max(result_.empirical_c_iso, static_cast<double>(d * s) / static_cast<double>(b));
  }

  IsoScanResult finish() {
    if (result_.lemma10_margin == INT64_MAX) result_.lemma10_margin = 0;
    return std::move(result_);
  }

 private:
  const CubeGraph& g_;
  std::size_t size_;
  IsoScanResult result_;
};

void check_budget(double subsets, std::size_t size, std::uint64_t budget) {
  const double work = subsets * static_cast<double>(std::max<std::size_t>(size, 1));
  if (work > static_cast<double>(budget))
    throw BudgetExceeded("isoperimetric scan needs ~" + std::to_string(work) + " checks, budget is " +
                         std::to_string(budget));
}

}  // namespace

IsoScanResult iso_scan(const CubeGraph& g, Parity side, std::size_t size, const IsoScanOptions& opts) {
  if (size == 0 || size > g.side_size()) throw PreconditionError("iso_scan: size must lie in [1, 2^{d-1}]");
  const int d = g.dimension();
  const auto n = static_cast<std::size_t>(g.side_size());
  Scanner scanner(g, size);
  std::vector<Vertex> members(size);

  switch (opts.mode) {
    case ScanMode::Exhaustive: {
      check_budget(binomial_double(static_cast<double>(n), static_cast<double>(size)), size, opts.budget);
      const auto evens = g.side_vertices(Parity::Even);
      for_each_combination(n, size, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < size; ++i) members[i] = evens[idx[i]];
        scanner.visit(members);
      });
      break;
    }
    case ScanMode::SymmetryReduced: {
      if (size == 1) {
        members[0] = 0;
        scanner.visit(members);
        break;
      }
      std::vector<Vertex> reps;
      for (int w = 2; w <= d; w += 2) reps.push_back((Vertex{1} << w) - 1);
      check_budget(static_cast<double>(reps.size()) *
                       binomial_double(static_cast<double>(n) - 2, static_cast<double>(size) - 2),
                   size, opts.budget);
      // Remaining members range over the even side minus {0, rep}.
      for (Vertex rep : reps) {
        members[0] = 0;
        members[1] = rep;
        if (size == 2) {
          scanner.visit(members);
          continue;
        }
        std::vector<Vertex> rest;
        rest.reserve(n - 2);
        for (Vertex v = 1; v < g.vertex_count(); ++v)
          if (parity_of(v) == Parity::Even && v != rep) rest.push_back(v);
        for_each_combination(rest.size(), size - 2, [&](const std::vector<std::size_t>& idx) {
          for (std::size_t i = 0; i + 2 < size; ++i) members[i + 2] = rest[idx[i]];
          scanner.visit(members);
        });
      }
      break;
    }
    case ScanMode::Sampled: {
      check_budget(static_cast<double>(opts.samples), size, opts.budget);
      std::mt19937_64 rng(opts.seed);
      const Vertex mask = g.vertex_count() - 1;
      for (std::uint64_t s = 0; s < opts.samples; ++s) {
        std::vector<Vertex> chosen;
        while (chosen.size() < size) {
          Vertex v = rng() & mask;
          if (parity_of(v) == Parity::Odd) v ^= 1;
          if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) chosen.push_back(v);
        }
        std::sort(chosen.begin(), chosen.end());
        scanner.visit(chosen);
      }
      break;
    }
  }

  IsoScanResult out = scanner.finish();
  if (side == Parity::Odd) {
    // Translation by e_0 swaps the classes and preserves |A| and |N(A)|.
    for (auto& v : out.witness) v ^= 1;
    std::sort(out.witness.begin(), out.witness.end());
  }
  return out;
}

}  // namespace hclab
