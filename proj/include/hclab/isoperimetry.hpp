#pragma once

#include <cstdint>
#include <vector>

#include "hclab/cube.hpp"

namespace hclab {

enum class ScanMode { Exhaustive, SymmetryReduced, Sampled };

struct IsoScanOptions {
  ScanMode mode = ScanMode::Exhaustive;
  // Cap on elementary checks (subsets scanned times their size); BudgetExceeded beyond it.
  std::uint64_t budget = 100'000'000;
  // Sampled mode only.
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 1;
};

/// Result of scanning one-sided sets of a fixed size.
struct IsoScanResult {
  // min |N(A)| / |A| over scanned A, kept as an exact fraction.
  std::uint64_t min_boundary = 0;
  std::uint64_t size = 0;
  // Members of a minimising set (sparse; d may be too large for a VertexSet).
  std::vector<Vertex> witness;
  std::uint64_t scanned = 0;
  // |N(A)| >= d|A| - 2|A|(|A|-1) whenever |A| <= d/10 (vacuous otherwise).
  bool lemma9_ok = true;
  // |N(A)| > |A| whenever |A| <= 2^{d-2} (vacuous otherwise).
  bool lemma10_ok = true;
  // Smallest |N(A)| - |A| over scanned sets with |A| <= 2^{d-2}; reported, not asserted.
  std::int64_t lemma10_margin = 0;
  // Largest C with |A| <= C|N(A)|/d over scanned sets, i.e. d|A|/|N(A)|.
  double empirical_c_iso = 0.0;

  double min_ratio() const noexcept { return static_cast<double>(min_boundary) / static_cast<double>(size); }
};

/// Vertex-isoperimetry scan of all (or representative) A on one side with |A| = size.
/// SymmetryReduced translates a member to 0 and permutes coordinates so a second member is 1^w 0^{d-w};
/// every orbit under the cube's automorphisms is visited at least once.
IsoScanResult iso_scan(const CubeGraph& g, Parity side, std::size_t size, const IsoScanOptions& opts = {});

}  // namespace hclab
